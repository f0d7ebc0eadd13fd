from __future__ import annotations

from dataclasses import dataclass

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from fourcolor.generators import apollonian_flipped
from fourcolor.graph import EmbeddedGraph, from_faces

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# ---------------------------------------------------------------- strategies


@st.composite
def triangulations(draw, min_n: int = 3, max_n: int = 30, max_flips: int = 60) -> EmbeddedGraph:
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**20))
    flips = draw(st.integers(0, max_flips))
    return apollonian_flipped(n, seed, flips)


@st.composite
def planar_graphs(draw, max_n: int = 30) -> EmbeddedGraph:
    """Triangulations with a few vertices deleted: planar, not always triangulated."""
    g = draw(triangulations(max_n=max_n))
    k = draw(st.integers(0, max(0, len(g) - 1)))
    victims = draw(st.permutations(g.vertices))[:k]
    for v in victims:
        g.remove_vertex(v)
    return g


# ------------------------------------------------------- reinsertion fixtures
#
# Vertex 0 is the vertex being reinserted; its rotation is 1, 2, ..., d, so the
# rim vertices 1..d play v1..vd. Extra vertices build the two-color chains.


@dataclass
class Config:
    name: str
    graph: EmbeddedGraph  # G_i, including vertex 0
    coloring: dict[int, int]  # coloring of G_i - 0


W4_INNER = [(0, 2, 1), (0, 3, 2), (0, 4, 3), (0, 1, 4)]
W5_INNER = [(0, 2, 1), (0, 3, 2), (0, 4, 3), (0, 5, 4), (0, 1, 5)]
W5_OPEN_INNER = [(0, 2, 1), (0, 3, 2), (0, 4, 3), (0, 5, 4)]  # no rim edge 5-1


def _cfg(name, faces, colors) -> Config:
    return Config(name, from_faces(faces), dict(colors))


def config_c3_1() -> Config:
    return _cfg("3.1", W4_INNER + [(1, 2, 3, 4)], {1: 1, 2: 2, 3: 1, 4: 3})


def config_b() -> Config:
    """Degree 4, v1 and v3 in different (1,3)-components."""
    return _cfg("1b", W4_INNER + [(1, 2, 3, 4)], {1: 1, 2: 2, 3: 3, 4: 4})


def config_c() -> Config:
    """Degree 4 with the (1,3)-chain v1-5-6-v3 outside the rim."""
    faces = W4_INNER + [(1, 2, 5), (5, 2, 6), (6, 2, 3), (1, 5, 6, 3, 4)]
    return _cfg("1c", faces, {1: 1, 2: 2, 3: 3, 4: 4, 5: 3, 6: 1})


def config_d() -> Config:
    """Degree 5, repeated color on v5, v1 (not adjacent to each other)."""
    faces = W5_OPEN_INNER + [(1, 2, 3, 4, 5, 0)]
    return _cfg("1d", faces, {1: 1, 2: 2, 3: 3, 4: 4, 5: 1})


def config_e() -> Config:
    """As 1d plus the (1,3)-chain v1-6-7-v3."""
    faces = W5_OPEN_INNER + [(1, 2, 6), (6, 2, 7), (7, 2, 3), (1, 6, 7, 3, 4, 5, 0)]
    return _cfg("1e", faces, {1: 1, 2: 2, 3: 3, 4: 4, 5: 1, 6: 3, 7: 1})


def config_f() -> Config:
    """Degree 5, v1 and v3 share color 1; v5 alone in its (2,4)-component."""
    return _cfg("1f", W5_INNER + [(1, 2, 3, 4, 5)], {1: 1, 2: 2, 3: 1, 4: 3, 5: 4})


def config_g() -> Config:
    """As 1f plus the (2,4)-chain v2-6-7-v5 around v1."""
    faces = W5_INNER + [(1, 2, 6), (1, 6, 7), (5, 1, 7), (7, 6, 2, 3, 4, 5)]
    return _cfg("1g", faces, {1: 1, 2: 2, 3: 1, 4: 3, 5: 4, 6: 4, 7: 2})


def config_h() -> Config:
    """As 1g plus the (2,3)-chain v2-8-9-v4 around v3: the double-swap branch."""
    faces = W5_INNER + [
        (1, 2, 6), (1, 6, 7), (5, 1, 7),
        (2, 3, 8), (8, 3, 9), (9, 3, 4),
        (7, 6, 2, 8, 9, 4, 5),
    ]  # fmt: skip
    return _cfg("1h", faces, {1: 1, 2: 2, 3: 1, 4: 3, 5: 4, 6: 4, 7: 2, 8: 3, 9: 2})


ALL_CONFIGS = {
    "C3_1": config_c3_1,
    "C3_2_1": config_b,
    "C3_2_2": config_c,
    "C3_3_1_1": config_d,
    "C3_3_1_2": config_e,
    "C3_3_2_1": config_f,
    "C3_3_2_2_1": config_g,
    "C3_3_2_2_2": config_h,
}


@pytest.fixture(params=sorted(ALL_CONFIGS))
def any_config(request) -> tuple[str, Config]:
    return request.param, ALL_CONFIGS[request.param]()


# -------------------------------------------------- acceptance result lines

_CRITERIA: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _CRITERIA:
        terminalreporter.write_line(f"{status}  {label}")
