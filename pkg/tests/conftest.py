import functools
import gzip
from pathlib import Path

from hypothesis import strategies as st

from aalpha.graph import Graph, parse_graph6

DATA = Path(__file__).parent / "data"


def corpus_path(n: int) -> Path:
    plain = DATA / f"graphs{n}.g6"
    return plain if plain.exists() else DATA / f"graphs{n}.g6.gz"


@functools.lru_cache(maxsize=None)
def corpus_lines(n: int) -> tuple[bytes, ...]:
    path = corpus_path(n)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rb") as fh:
        return tuple(line.strip() for line in fh if line.strip())


@functools.lru_cache(maxsize=None)
def corpus(n: int) -> tuple[Graph, ...]:
    return tuple(parse_graph6(line) for line in corpus_lines(n))


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool | None, detail: str = "") -> None:
    status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
