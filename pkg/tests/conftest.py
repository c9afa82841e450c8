"""Shared fixtures: the four reference group actions used across the suite."""

import pytest

from orbitslp import GF, QQ, GroupSpec, RepSpec

TORUS_GROUP_JSON = {
    "ambient_dim": 2, "group_dim": 1, "vars": ["z1", "z2"],
    "generators": ["z1*z2 - 1"],
}
TORUS_REP_JSON = {"n": 2, "rho": [["z1", "0"], ["0", "z1"]]}

SIGN_GROUP_JSON = {
    "ambient_dim": 1, "group_dim": 0, "vars": ["z"],
    "generators": ["z^2 - 1"],
}
SIGN_REP_JSON = {"n": 1, "rho": [["z"]]}

CYCLIC3_GROUP_JSON = {
    "ambient_dim": 1, "group_dim": 0, "vars": ["z"],
    "generators": ["z^3 - 1"],
}
CYCLIC3_REP_JSON = {"n": 2, "rho": [["z", "0"], ["0", "z"]]}

TRIVIAL_GROUP_JSON = {
    "ambient_dim": 2, "group_dim": 0, "vars": ["z1", "z2"],
    "generators": ["z1", "z2"],
}
TRIVIAL_REP_JSON = {"n": 2, "rho": [["1", "0"], ["0", "1"]]}


def make_action(group_json, rep_json, field):
    group = GroupSpec.from_json_dict(group_json, field)
    rep = RepSpec.from_json_dict(rep_json, group, field)
    return group, rep


@pytest.fixture(scope="session")
def torus_action():
    """Multiplicative group scaling the plane: every line is one orbit."""
    return make_action(TORUS_GROUP_JSON, TORUS_REP_JSON, QQ)


@pytest.fixture(scope="session")
def sign_action():
    """Order-two group acting on the line by sign flips."""
    return make_action(SIGN_GROUP_JSON, SIGN_REP_JSON, QQ)


@pytest.fixture(scope="session")
def cyclic3_action_gf7():
    """Cube roots of unity in GF(7) scaling the plane diagonally."""
    return make_action(CYCLIC3_GROUP_JSON, CYCLIC3_REP_JSON, GF(7))


@pytest.fixture(scope="session")
def trivial_action():
    """One-element group: every point is its own orbit."""
    return make_action(TRIVIAL_GROUP_JSON, TRIVIAL_REP_JSON, QQ)
