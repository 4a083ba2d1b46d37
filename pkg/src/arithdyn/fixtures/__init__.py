"""Bundled inputs: varieties, monomial maps, pairings, and designed fixtures.

Files live next to this module and are addressed by bare file name.  The
``BUNDLED_*`` tuples are the canonical inventories used by the acceptance
suite; ``load_fixture`` parses a file and ``fixture_path`` exposes its
filesystem location for the command-line interface.
"""

import json
from importlib import resources

from ..errors import InputError

BUNDLED_VARIETIES = ("p1_f5.json", "p2_f3.json", "aff2_f3.json",
                     "ec_f3.json", "ec_f5.json", "ec_f7.json",
                     "ec_f3_hyp.json", "ec_f5_hyp.json", "ec_f7_hyp.json",
                     "hyp2_f3.json")
BUNDLED_CURVES = ("ec_f3.json", "ec_f5.json", "ec_f7.json", "hyp2_f3.json")
BUNDLED_MONOMIALS = ("cremona.json", "mono_x2y_xyz_z3.json")
BUNDLED_MODELS = ("model_frob32.json",)
BUNDLED_PAIRINGS = ("gram211.json", "gram_hyperbolic.json", "gram_id3.json")
BUNDLED_UNIT_MODULUS = ("unit_golden.json", "unit_i.json", "unit_one.json",
                        "unit_pair.json")


def fixture_path(name: str):
    """Filesystem path of a bundled fixture file."""
    path = resources.files(__package__).joinpath(name)
    if not path.is_file():
        raise InputError(f"no bundled fixture named {name!r}")
    return path


def load_fixture(name: str):
    """Parse a bundled fixture file as JSON."""
    with fixture_path(name).open() as fh:
        return json.load(fh)
