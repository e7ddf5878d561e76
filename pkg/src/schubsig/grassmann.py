"""Partition combinatorics for G(p, m), independent of the root-system code.

Schubert classes of G(p, m) are partitions inside a p x q box (q = m - p);
multiplication by the hyperplane class adds one box (Pieri, all coefficients
one) and Poincare duality is the box complement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import SchubertClass, SpaceModel
from .errors import ConfigurationError
from .rootsys import partition_label


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]  # length exactly p, weakly decreasing
    rows: int
    cols: int

    def __post_init__(self):
        if len(self.parts) != self.rows:
            raise ValueError(f"{self.parts} must have exactly {self.rows} entries")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"{self.parts} is not weakly decreasing")
        if self.parts and (self.parts[0] > self.cols or self.parts[-1] < 0):
            raise ValueError(f"{self.parts} does not fit a {self.rows}x{self.cols} box")

    @classmethod
    def of(cls, parts, rows: int, cols: int) -> "Partition":
        parts = tuple(parts) + (0,) * (rows - len(parts))
        return cls(parts, rows, cols)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def label(self) -> str:
        return partition_label(self.parts)


def enumerate_partitions(p: int, q: int, size: int) -> list[Partition]:
    """Partitions of ``size`` in a p x q box, sorted lexicographically (largest first)."""
    out = []

    def rec(prefix, remaining, bound):
        if len(prefix) == p:
            if remaining == 0:
                out.append(Partition(tuple(prefix), p, q))
            return
        slots = p - len(prefix)
        for part in range(min(bound, remaining), -1, -1):
            if part * slots < remaining:
                break
            rec(prefix + [part], remaining - part, part)

    if 0 <= size <= p * q:
        rec([], size, q)
    return out


def pieri_add_box(lam: Partition) -> list[Partition]:
    """Partitions obtained by adding one box to ``lam`` inside its box."""
    out = []
    parts = lam.parts
    for i in range(lam.rows):
        above = parts[i - 1] if i else lam.cols
        if parts[i] < above:
            new = list(parts)
            new[i] += 1
            out.append(Partition(tuple(new), lam.rows, lam.cols))
    return sorted(out, reverse=True)


def complement(lam: Partition) -> Partition:
    p, q = lam.rows, lam.cols
    return Partition(tuple(q - lam.parts[p - 1 - i] for i in range(p)), p, q)


def grassmannian_model(p: int, m: int) -> SpaceModel:
    """SpaceModel of G(p, m) labelled by partitions, shaped like ``build_space('A', m-1, p)``."""
    if not 1 <= p < m:
        raise ConfigurationError(f"G(p,m) needs 1 <= p < m, got ({p},{m})")
    q = m - p
    levels = [enumerate_partitions(p, q, k) for k in range(p * q + 1)]
    index = [{lam: i for i, lam in enumerate(level)} for level in levels]
    basis = tuple(
        tuple(SchubertClass(lam.label, k, i, lam.label) for i, lam in enumerate(level))
        for k, level in enumerate(levels)
    )
    chev = []
    for k in range(p * q):
        entries = {}
        for i, lam in enumerate(levels[k]):
            for mu in pieri_add_box(lam):
                entries[(i, index[k + 1][mu])] = 1
        chev.append(entries)
    dual = tuple(
        tuple(index[p * q - k][complement(lam)] for lam in level) for k, level in enumerate(levels)
    )
    return SpaceModel(("A", m - 1, p), p * q, basis, tuple(chev), dual)


@dataclass(frozen=True)
class Mismatch:
    what: str
    detail: str

    def __str__(self):
        return f"{self.what}: {self.detail}"


def compare_models(oracle: SpaceModel, engine: SpaceModel) -> Mismatch | None:
    """Compare two models under their partition aliases; return the first difference."""
    if oracle.betti != engine.betti:
        return Mismatch("betti", f"{oracle.betti} != {engine.betti}")

    def keyed(model):
        names = [[c.alias or c.label for c in level] for level in model.basis]
        chev = {
            (names[k][i], names[k + 1][j]): c for k, entries in enumerate(model.chev) for (i, j), c in entries.items()
        }
        dual = {names[k][i]: names[model.dim - k][j] for k, row in enumerate(model.dual) for i, j in enumerate(row)}
        return names, chev, dual

    n1, c1, d1 = keyed(oracle)
    n2, c2, d2 = keyed(engine)
    for k, (a, b) in enumerate(zip(n1, n2)):
        if set(a) != set(b):
            return Mismatch("labels", f"degree {k}: {sorted(set(a) ^ set(b))}")
    for key in sorted(set(c1) | set(c2)):
        if c1.get(key) != c2.get(key):
            return Mismatch("chevalley", f"{key[0]} -> {key[1]}: oracle {c1.get(key)}, engine {c2.get(key)}")
    for key in sorted(d1):
        if d1[key] != d2[key]:
            return Mismatch("duality", f"{key}: oracle {d1[key]}, engine {d2[key]}")
    return None
