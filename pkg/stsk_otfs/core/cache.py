'''
Trie cache keyed by sequences, used to share per-channel factorizations
between detectors.
'''

__all__ = [
    'CacheNode',
]


class CacheNode:
    def __init__(self):
        self.children = {}
        self.data = None

    def get(self, keys, touch=False):
        '''
        Walk the trie along `keys`. Missing nodes are created when `touch` is
        set, otherwise None is returned.
        '''
        current = self
        for key in keys:
            child = current.children.get(key)
            if child is None:
                if not touch: return
                child = CacheNode()
                current.children[key] = child
            current = child
        return current

    def lookup(self, keys):
        node = self.get(keys)
        return None if node is None else node.data

    def add(self, keys, data):
        self.get(keys, True).data = data
        return data

    def setdefault(self, keys, factory):
        '''Return the cached value at `keys`, computing it with `factory()` on a miss.'''
        node = self.get(keys, True)
        if node.data is None:
            node.data = factory()
        return node.data

    def __len__(self):
        count = 0 if self.data is None else 1
        for child in self.children.values():
            count += len(child)
        return count
