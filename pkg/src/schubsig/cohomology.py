"""Graded Schubert model of H^*(G/P) and the middle-cohomology signature."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import rootsys
from .errors import ParityError

# Below this many classes, duality is recomputed through a second route on build.
DUALITY_CROSSCHECK_LIMIT = 2000


@dataclass(frozen=True)
class SchubertClass:
    label: str
    degree: int  # complex codimension
    index: int  # position inside its degree
    alias: str | None = None

    def display(self) -> str:
        return self.alias if self.alias is not None else self.label


@dataclass(frozen=True)
class SpaceModel:
    """Schubert basis graded by codimension, hyperplane multiplication and duality.

    ``chev[k]`` maps ``(i, j)`` to the coefficient of the j-th degree-(k+1)
    class in H times the i-th degree-k class.  ``dual[k][i]`` is the index,
    inside degree N-k, of the dual of the i-th degree-k class.
    """

    space_id: tuple[str, int, int]
    dim: int
    basis: tuple[tuple[SchubertClass, ...], ...]
    chev: tuple[dict, ...]
    dual: tuple[tuple[int, ...], ...]

    @property
    def N(self) -> int:
        return self.dim

    @property
    def betti(self) -> list[int]:
        return [len(level) for level in self.basis]

    @property
    def num_classes(self) -> int:
        return sum(self.betti)

    @property
    def name(self) -> str:
        t, r, p = self.space_id
        return f"{t},{r},{p}" if t in "ABCD" else f"{t},{p}"

    @cached_property
    def by_label(self) -> dict[str, SchubertClass]:
        out = {}
        for level in self.basis:
            for c in level:
                out[c.label] = c
                if c.alias is not None:
                    out[c.alias] = c
        return out

    def lookup(self, label: str) -> SchubertClass:
        return self.by_label[label]

    def dual_of(self, c: SchubertClass) -> SchubertClass:
        k = self.dim - c.degree
        return self.basis[k][self.dual[c.degree][c.index]]

    def chev_matrix(self, k: int) -> list[list[int]]:
        """Dense Chevalley matrix from degree k to degree k+1."""
        rows, cols = len(self.basis[k]), len(self.basis[k + 1])
        m = [[0] * cols for _ in range(rows)]
        for (i, j), c in self.chev[k].items():
            m[i][j] = c
        return m

    def check(self) -> None:
        """Assert the structural invariants; raises AssertionError on failure."""
        betti = self.betti
        assert betti == betti[::-1], "Betti numbers not palindromic"
        assert betti[0] == 1 and betti[-1] == 1
        for k, level in enumerate(self.basis):
            for i, c in enumerate(level):
                j = self.dual[k][i]
                assert self.dual[self.dim - k][j] == i, "duality is not an involution"
        for k in range(self.dim):
            assert all(c > 0 for c in self.chev[k].values())
            hit = {j for (_, j) in self.chev[k]}
            assert hit == set(range(betti[k + 1])), f"class without predecessor in degree {k + 1}"
        # c_{w,H}^{w'} = c_{w'*,H}^{w*}
        for k in range(self.dim):
            for (i, j), c in self.chev[k].items():
                ii = self.dual[k + 1][j]
                jj = self.dual[k][i]
                assert self.chev[self.dim - k - 1].get((ii, jj)) == c, "Chevalley not dual-compatible"

    def degree(self) -> int:
        """deg(Y): coefficient of the point class in H^N."""
        vec = [1]
        for k in range(self.dim):
            nxt = [0] * len(self.basis[k + 1])
            for (i, j), c in self.chev[k].items():
                nxt[j] += c * vec[i]
            vec = nxt
        return vec[0]


def build_space(type_label: str, rank: int, node: int, cap: int | None = None) -> SpaceModel:
    rs = rootsys.build_root_system(type_label, rank)
    data = rootsys.coset_reps(rs, node, cap)
    return model_from_cosets(data)


def model_from_cosets(data: rootsys.CosetData) -> SpaceModel:
    basis = tuple(
        tuple(SchubertClass(c.label, k, i, c.alias) for i, c in enumerate(level))
        for k, level in enumerate(data.levels)
    )
    pos = {c.label: (k, i) for k, level in enumerate(data.levels) for i, c in enumerate(level)}
    chev = []
    for k in range(data.dim):
        entries = {}
        for i, c in enumerate(data.levels[k]):
            for target, coeff in rootsys.chevalley(data, c):
                entries[(i, pos[target.label][1])] = coeff
        chev.append(entries)
    dmap = rootsys.duality_map(data)
    if len(data) <= DUALITY_CROSSCHECK_LIMIT:
        assert dmap == rootsys.duality_via_weights(data), "duality routes disagree"
    dual = tuple(tuple(pos[dmap[c.label]][1] for c in level) for level in data.levels)
    rs = data.rs
    model = SpaceModel((rs.type_label, rs.rank, data.node), data.dim, basis, tuple(chev), dual)
    model.check()
    return model


# -- middle cohomology -------------------------------------------------------


def half_index(model: SpaceModel) -> int:
    """n with N = 2(n-1); raises ParityError for odd N."""
    if model.dim % 2:
        raise ParityError(f"method undefined for odd-dimensional Y (N = {model.dim})")
    return model.dim // 2 + 1


def sets_T_U(model: SpaceModel) -> tuple[tuple[SchubertClass, ...], tuple[SchubertClass, ...]]:
    """Classes of dimension n (codimension n-2) and n-1 (middle)."""
    n = half_index(model)
    T = model.basis[n - 2] if n >= 2 else ()
    return T, model.basis[n - 1]


@dataclass(frozen=True)
class MiddleAnalysis:
    n: int
    T: tuple[str, ...]
    U: tuple[str, ...]
    U_id: tuple[str, ...]
    U_hyp: tuple[str, ...]

    @property
    def h_mid(self) -> int:
        return len(self.U)

    @property
    def sigma(self) -> int:
        return len(self.U_id)

    @property
    def rank_bound(self) -> int:
        return (self.h_mid - self.sigma) // 2 + 1

    @property
    def definite(self) -> bool:
        return self.sigma == self.h_mid


def middle_analysis(model: SpaceModel) -> MiddleAnalysis:
    T, U = sets_T_U(model)
    n = half_index(model)
    mid = n - 1
    fixed = [u.label for u in U if model.dual[mid][u.index] == u.index]
    swapped = [u.label for u in U if model.dual[mid][u.index] != u.index]
    assert len(swapped) % 2 == 0
    return MiddleAnalysis(
        n,
        tuple(t.label for t in T),
        tuple(u.label for u in U),
        tuple(fixed),
        tuple(swapped),
    )


def pairing_matrix(model: SpaceModel) -> list[list[int]]:
    """Poincare pairing on middle cohomology in the Schubert basis (a permutation matrix)."""
    n = half_index(model)
    mid = n - 1
    size = len(model.basis[mid])
    return [[int(model.dual[mid][i] == j) for j in range(size)] for i in range(size)]


# -- family scans ------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    space: str
    dim: int
    h_mid: int | None
    sigma: int | None
    rank_bound: int | None
    note: str = ""

    @property
    def definite(self) -> bool | None:
        if self.h_mid is None:
            return None
        return self.sigma == self.h_mid


def family_members(type_label: str, max_rank: int, nodes: str = "all"):
    """(type, rank, node) triples for a family; ``nodes`` is 'all', 'first', 'last' or an int."""
    labels = {"E": [("E6", 6), ("E7", 7), ("E8", 8)], "F": [("F4", 4)], "G": [("G2", 2)]}
    t = type_label.upper()
    if t in labels:
        ranks = [(lab, r) for lab, r in labels[t] if r <= max_rank]
    elif t in ("E6", "E7", "E8", "F4", "G2"):
        ranks = [(t, rootsys._EXCEPTIONAL_RANK[t])]
    else:
        start = rootsys._MIN_CLASSICAL_RANK.get(t)
        if start is None:
            raise rootsys.ConfigurationError(f"unknown family {type_label!r}")
        ranks = [(t, r) for r in range(start, max_rank + 1)]
    for lab, r in ranks:
        if nodes == "all":
            chosen = range(1, r + 1)
        elif nodes == "first":
            chosen = [1]
        elif nodes == "last":
            chosen = [r]
        else:
            chosen = [int(nodes)] if int(nodes) <= r else []
        for p in chosen:
            yield lab, r, p


def positivity_scan(members, even_only: bool = False, cap: int | None = None) -> list[ScanRow]:
    """Middle-cohomology signature for every listed space, in input order."""
    rows = []
    for t, r, p in members:
        model = build_space(t, r, p, cap)
        name = f"{t}{r}/P{p}" if t in "ABCD" else f"{t}/P{p}"
        if model.dim % 2:
            if not even_only:
                rows.append(ScanRow(name, model.dim, None, None, None, "odd dimension"))
            continue
        ma = middle_analysis(model)
        rows.append(ScanRow(name, model.dim, ma.h_mid, ma.sigma, ma.rank_bound))
    return rows
