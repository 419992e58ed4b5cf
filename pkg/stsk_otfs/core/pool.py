'''
Fan jobs out to worker processes. Results come back in job order.
'''

import asyncio
from concurrent.futures import ProcessPoolExecutor

__all__ = [
    'run_jobs',
]


async def _run_all(fn, jobs, workers):
    loop = asyncio.get_event_loop()
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [asyncio.ensure_future(loop.run_in_executor(executor, fn, *job)) for job in jobs]
        return await asyncio.gather(*futures)


def run_jobs(fn, jobs, workers=1):
    '''
    Call `fn(*job)` for every job. `workers == 1` runs inline.
    '''
    jobs = [tuple(job) for job in jobs]
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    return list(asyncio.run(_run_all(fn, jobs, workers)))
