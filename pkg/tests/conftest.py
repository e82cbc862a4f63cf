import os

from hypothesis import HealthCheck, settings, strategies as st

from gausslink.diagram import GaussDiagram

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("GAUSSLINK_EXAMPLES", "150")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def diagrams(draw, components=2, max_crossings=7, min_crossings=0):
    """Random valid diagram: shuffled endpoints cut into ``components`` words."""
    n = draw(st.integers(min_crossings, max_crossings))
    tokens = [(a, t) for a in range(n) for t in (True, False)]
    tokens = draw(st.permutations(tokens))
    cuts = sorted(draw(st.lists(st.integers(0, 2 * n), min_size=components - 1, max_size=components - 1)))
    bounds = [0] + cuts + [2 * n]
    words = [tokens[bounds[i] : bounds[i + 1]] for i in range(components)]
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    return GaussDiagram.from_words(words, dict(enumerate(signs)))


@st.composite
def rotations(draw, d):
    return tuple(draw(st.integers(0, max(n - 1, 0))) for n in d.lengths)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(results, key=lambda t: int(t[1:])):
        terminalreporter.write_line(results[tag])
