'''
Error types shared by all modules.

Every error carries a stable `code` so the command line can report failures
in a machine-readable way.
'''

__all__ = [
    'StskError',
    'NonPowerOfTwo',
    'IndivisibleUsers',
    'DelayDopplerOutOfRange',
    'UnsupportedOrder',
    'UnknownConfigKey',
    'ConfigParseError',
    'DimensionMismatch',
    'EmptyErrorSpace',
    'LengthMismatch',
    'CodebookTooLarge',
    'SearchSpaceTooLarge',
    'InvalidDapIndex',
    'TooManyPaths',
    'SolveFailure',
    'NonHermitianInput',
    'IncompatibleBase',
    'PointAborted',
    'DetectorSpecError',
]


class StskError(Exception):
    code = 'error'
    default_message = 'Unknown error'

    def __init__(self, message=None, **details):
        message = message or self.default_message
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        data = {'error': self.code, 'message': self.message}
        data.update((k, v) for k, v in self.details.items() if isinstance(v, (int, float, str)))
        return data


class NonPowerOfTwo(StskError):
    code = 'non_power_of_two'
    default_message = 'Q and V must be powers of two'

class IndivisibleUsers(StskError):
    code = 'indivisible_users'
    default_message = 'Grid dimension is not divisible by the user count'

class DelayDopplerOutOfRange(StskError):
    code = 'delay_doppler_out_of_range'
    default_message = 'Maximum delay/Doppler index exceeds the grid'

class UnsupportedOrder(StskError):
    code = 'unsupported_order'
    default_message = 'Constellation order not supported'

class UnknownConfigKey(StskError):
    code = 'unknown_config_key'

class ConfigParseError(StskError):
    code = 'config_parse_error'

class DimensionMismatch(StskError):
    code = 'dimension_mismatch'

class EmptyErrorSpace(StskError):
    code = 'empty_error_space'
    default_message = 'No codeword pairs to evaluate'

class LengthMismatch(StskError):
    code = 'length_mismatch'

class CodebookTooLarge(StskError):
    code = 'codebook_too_large'

class SearchSpaceTooLarge(StskError):
    code = 'search_space_too_large'

class InvalidDapIndex(StskError):
    code = 'invalid_dap_index'

class TooManyPaths(StskError):
    code = 'too_many_paths'

class SolveFailure(StskError):
    code = 'solve_failure'
    default_message = 'Linear system is singular or rank deficient'

class NonHermitianInput(StskError):
    code = 'non_hermitian_input'

class IncompatibleBase(StskError):
    code = 'incompatible_base'

class PointAborted(StskError):
    code = 'point_aborted'

class DetectorSpecError(StskError):
    code = 'detector_spec_error'
