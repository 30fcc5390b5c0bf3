import os
import logging

from ellfan.errors import ParseError

DEFAULT_MAX_CONES = 20
MAX_CONES_ENV = "ELLFAN_MAX_CONES"

SYMBOL_PREFIX = "g"

PROPERTY_SEED = 666
PROPERTY_CASES = 200


def max_cones(override=None):
    """The nerve cap: explicit override, then $ELLFAN_MAX_CONES, then the default."""
    if override is not None:
        return int(override)
    value = os.environ.get(MAX_CONES_ENV)
    if value is None or value == "":
        return DEFAULT_MAX_CONES
    try:
        return int(value)
    except ValueError:
        logging.log(logging.ERROR, "Environment variable " + MAX_CONES_ENV + " is not an integer: " + value)
        raise ParseError(MAX_CONES_ENV + " must be an integer, got " + repr(value))

P2_BUDGET_SECONDS = 1.0
LARGE_FAN_BUDGET_SECONDS = 30.0
