from enum import Enum

class ExitCode(Enum):
    OK = 0
    INVALID_INPUT = 2
    NUMERICAL_FAILURE = 3
