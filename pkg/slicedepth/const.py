"""Constants for slicedepth."""

from __future__ import annotations

CONF_COMMAND = "command"
CONF_SHAPE = "shape"
CONF_FIELD = "field"
CONF_ORDER = "order"
CONF_MODE = "mode"
CONF_MAX_LENGTH = "max_length"
CONF_FORMAT = "format"
CONF_JOBS = "jobs"
CONF_SEED = "seed"
CONF_SAMPLE = "sample"
CONF_POLY = "poly"
CONF_MAXIMAL = "maximal"
CONF_SHOW_F = "show_f"
CONF_SIZE = "n"
CONF_VERBOSE = "verbose"

DOMAIN = "slicedepth"

COMMAND_CONSTRUCT = "construct"
COMMAND_CERTIFY = "certify"
COMMAND_GB = "gb"
COMMAND_MEMBER = "member"
COMMAND_COLON = "colon"
COMMAND_RESOLVE = "resolve"
COMMAND_BETTI = "betti"
COMMAND_SUPPORT = "support"
COMMAND_GROWTH = "growth"
COMMAND_REPORT_ALL = "report-all"

COMMANDS = [
    COMMAND_CONSTRUCT,
    COMMAND_CERTIFY,
    COMMAND_GB,
    COMMAND_MEMBER,
    COMMAND_COLON,
    COMMAND_RESOLVE,
    COMMAND_BETTI,
    COMMAND_SUPPORT,
    COMMAND_GROWTH,
    COMMAND_REPORT_ALL,
]
# commands that never contract, so they may run over a prime field
PRIME_FIELD_COMMANDS = {
    COMMAND_GB,
    COMMAND_MEMBER,
    COMMAND_COLON,
    COMMAND_RESOLVE,
    COMMAND_BETTI,
    COMMAND_SUPPORT,
}

ORDER_GREVLEX = "grevlex"
ORDER_LEX = "lex"
ORDERS = [ORDER_GREVLEX, ORDER_LEX]

MODE_EXCHANGE = "exchange"
MODE_GROEBNER = "groebner"
MODES = [MODE_EXCHANGE, MODE_GROEBNER]

FORMAT_TEXT = "text"
FORMAT_JSON = "json"
FORMATS = [FORMAT_TEXT, FORMAT_JSON]

FIELD_RATIONALS = "q"

DEFAULT_FIELD = FIELD_RATIONALS
DEFAULT_ORDER = ORDER_GREVLEX
DEFAULT_MODE = MODE_EXCHANGE
DEFAULT_FORMAT = FORMAT_TEXT
DEFAULT_JOBS = 1
DEFAULT_SEED = 0
DEFAULT_SAMPLE = 0
DEFAULT_MAX_LENGTH = 16

# direct resolutions beyond this many variables are refused
DIRECT_RESOLUTION_LIMIT = 6
# groebner-mode colon checks beyond this many variables log a warning
GROEBNER_VARIABLE_LIMIT = 8

MAX_EXPONENT = 2**31 - 1

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

ATTR_SHAPE = "shape"
ATTR_FIELD = "field"
ATTR_CHECKS = "checks"
ATTR_NAME = "name"
ATTR_PASS = "pass"
ATTR_DETAIL = "detail"
ATTR_PD = "pd"
ATTR_SUPPORT = "support"
ATTR_MULTIPLICITY = "multiplicity"
ATTR_DISTINCT = "distinct"
ATTR_INFO = "info"

ERROR_INVALID_SHAPE = "invalid_shape"
ERROR_SYNTAX = "syntax_error"
ERROR_FIELD_MISMATCH = "field_mismatch"
ERROR_CHARACTERISTIC = "characteristic"
ERROR_INVALID_COMMAND = "invalid_command"
ERROR_RESOLUTION = "resolution"
ERROR_CERTIFICATE = "certificate"
ERROR_UNKNOWN = "unknown"
