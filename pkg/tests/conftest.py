import os

import pytest

LONG = os.environ.get("FRIEZE_LONG") == "1"

long_only = pytest.mark.skipif(not LONG, reason="hours-scale; set FRIEZE_LONG=1 to run")
