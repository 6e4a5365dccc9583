import itertools
import pathlib
import sys

from hypothesis import HealthCheck, settings, strategies as st

from gradecone import LocalInstance, PolynomialRing
from gradecone.ring import PrimeField

ROOT = pathlib.Path(__file__).resolve().parents[1]
INSTANCES = ROOT / "instances"
P = 32003

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def ring(names="xy", field=None, order="grevlex"):
    return PolynomialRing(list(names), field if field is not None else PrimeField(P), order)


def load(name):
    return LocalInstance.from_file(INSTANCES / f"{name}.json")


# ---------------------------------------------------------------- strategies

def exponents(n, max_deg, min_deg=0):
    return st.tuples(*[st.integers(0, max_deg)] * n).filter(lambda e: min_deg <= sum(e) <= max_deg)


def polynomials(R, max_deg=3, max_terms=4, min_deg=0):
    coeffs = st.integers(-5, 5).filter(bool)
    return st.dictionaries(exponents(R.nvars, max_deg, min_deg), coeffs, max_size=max_terms).map(R.from_dict)


def monomial_ideals(draw_n=(2, 3), max_deg=6, max_gens=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(*draw_n))
        R = ring("xyz"[:n])
        gens = draw(st.lists(exponents(n, max_deg, 1), min_size=1, max_size=max_gens, unique=True))
        return R, [R.monomial(e) for e in gens]
    return build()


# ---------------------------------------------------------------- oracles

def rank_mod(rows, p=P):
    """Plain Gaussian elimination on lists of ints; independent of the package kernels."""
    rows = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def monomials_upto(n, N):
    return [e for d in range(N + 1) for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]


def truncated_colength(gens, n, N, p=P):
    """Length of k[x]/(I + m^{N+1}) by spanning every x^a * g truncated at degree N."""
    mons = monomials_upto(n, N)
    idx = {e: i for i, e in enumerate(mons)}
    rows = []
    for g in gens:
        terms = {e: int(c) for e, c in g.as_dict().items()}
        low = min(sum(e) for e in terms)
        for a in mons:
            if sum(a) + low > N:
                continue
            row = [0] * len(mons)
            for e, c in terms.items():
                m = tuple(x + y for x, y in zip(a, e))
                if sum(m) <= N:
                    row[idx[m]] = c
            rows.append(row)
    return len(mons) - (rank_mod(rows, p) if rows else 0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        verdict, title, detail = results[number]
        extra = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"C{number:<2} {verdict}  {title}{extra}")
