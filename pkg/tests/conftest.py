import sys
import random
from itertools import combinations

import pytest

from resolvekit import build_graph, generate


def vid(g, name: str) -> int:
    """Vertex id for a label such as ``"p2"``."""
    return g.vertex_of(name[0].upper(), int(name[1:]))


def vids(g, names: str) -> list[int]:
    return [vid(g, x) for x in names.split(",")]


def random_connected(n: int, p: float, seed: int):
    """Random spanning tree plus extra edges with probability p."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for a, b in combinations(range(n), 2):
        if (a, b) not in edges and rng.random() < p:
            edges.add((a, b))
    return build_graph(n, sorted(edges))


def control_corpus():
    """(name, graph) pairs for cross-checking the exact methods (V <= 24)."""
    out = []
    for n in range(1, 11):
        out.append((f"path{n}", generate("path", n)))
    for n in range(3, 13):
        out.append((f"cycle{n}", generate("cycle", n)))
    for n in range(1, 7):
        out.append((f"complete{n}", generate("complete", n)))
    for seed in range(20):
        n = 6 + seed % 19
        out.append((f"random{n}s{seed}", random_connected(n, 0.15, seed)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return control_corpus()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
