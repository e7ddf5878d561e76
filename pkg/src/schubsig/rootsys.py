"""Finite root systems, Weyl group actions and minimal coset representatives.

Roots are integer vectors in simple-root coordinates; weights are integer
vectors in fundamental-weight coordinates.  Nodes are numbered 1..rank in
Bourbaki order.  The Cartan matrix follows ``a[i][j] = <alpha_i^vee, alpha_j>``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ConfigurationError, ResourceError

DEFAULT_MAX_CLASSES = 100_000
DEFAULT_MAX_RANK = 8
ENV_MAX_CLASSES = "SCHUBSIG_MAX_CLASSES"

Vector = tuple[int, ...]

_EXCEPTIONAL_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
_MIN_CLASSICAL_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def max_classes() -> int:
    """Class-count cap, overridable through ``SCHUBSIG_MAX_CLASSES``."""
    raw = os.environ.get(ENV_MAX_CLASSES)
    if raw is None:
        return DEFAULT_MAX_CLASSES
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{ENV_MAX_CLASSES} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"{ENV_MAX_CLASSES} must be positive")
    return value


def normalize_type(type_label: str, rank: int) -> str:
    """Return the canonical type label ('A'..'D', 'E6', 'E7', 'E8', 'F4', 'G2')."""
    label = str(type_label).strip().upper()
    if label in _MIN_CLASSICAL_RANK:
        if rank < _MIN_CLASSICAL_RANK[label]:
            raise ConfigurationError(f"type {label} needs rank >= {_MIN_CLASSICAL_RANK[label]}, got {rank}")
        return label
    if label in ("E", "F", "G"):
        label = f"{label}{rank}"
    if label not in _EXCEPTIONAL_RANK:
        raise ConfigurationError(f"unknown Cartan type {type_label!r}")
    if _EXCEPTIONAL_RANK[label] != rank:
        raise ConfigurationError(f"type {label} has rank {_EXCEPTIONAL_RANK[label]}, got {rank}")
    return label


def _gram_matrix(label: str, r: int) -> list[list[int]]:
    # Symmetric (alpha_i, alpha_j), scaled so all entries are integers.
    g = [[0] * r for _ in range(r)]

    def link(i, j, v):
        g[i - 1][j - 1] = g[j - 1][i - 1] = v

    if label in "ABCD":
        for i in range(r):
            g[i][i] = 2
        chain = r if label != "D" else r - 1
        for i in range(1, chain):
            link(i, i + 1, -1)
        if label == "B":
            g[r - 1][r - 1] = 1
        elif label == "C":
            g[r - 1][r - 1] = 4
            link(r - 1, r, -2)
        elif label == "D":
            link(r - 2, r, -1)
    elif label[0] == "E":
        for i in range(r):
            g[i][i] = 2
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]:
            if i <= r and j <= r:
                link(i, j, -1)
    elif label == "F4":
        for i, v in enumerate([4, 4, 2, 2]):
            g[i][i] = v
        link(1, 2, -2)
        link(2, 3, -2)
        link(3, 4, -1)
    elif label == "G2":
        g[0][0], g[1][1] = 2, 6
        link(1, 2, -3)
    return g


def _diagram_involution(label: str, r: int) -> list[int]:
    """Permutation i -> i' with w0(alpha_i) = -alpha_i' (0-based)."""
    if label == "A":
        return [r - 1 - i for i in range(r)]
    if label == "D" and r % 2 == 1:
        return list(range(r - 2)) + [r - 1, r - 2]
    if label == "E6":
        return [5, 1, 4, 3, 2, 0]
    return list(range(r))


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, stored as its images of the simple roots."""

    images: tuple[Vector, ...]
    length: int

    def apply(self, v: Vector) -> Vector:
        out = [0] * len(v)
        for coeff, img in zip(v, self.images):
            if coeff:
                for k, x in enumerate(img):
                    out[k] += coeff * x
        return tuple(out)

    def compose(self, other: "WeylElement", length: int) -> "WeylElement":
        """self o other; the caller supplies the length (it is not additive)."""
        return WeylElement(tuple(self.apply(img) for img in other.images), length)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


@dataclass(frozen=True)
class CosetElement:
    """Minimal-length representative of a coset in W/W_P."""

    word: tuple[int, ...]
    element: WeylElement
    weight: Vector
    alias: str | None = None

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def label(self) -> str:
        return word_label(self.word)


def word_label(word) -> str:
    if not word:
        return "e"
    return ".".join(f"s{i}" for i in word)


def partition_label(parts) -> str:
    parts = [p for p in parts if p]
    return ",".join(map(str, parts)) if parts else "0"


def _is_negative(v: Vector) -> bool:
    return any(x < 0 for x in v)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]
    highest_root: Vector
    coroot_pairings: tuple[tuple[int, ...], ...]  # [i][k] = <varpi_{i+1}, beta_k^vee>
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({beta: k for k, beta in enumerate(self.positive_roots)})

    # -- linear algebra on roots and weights -------------------------------

    def norm2(self, v: Vector) -> int:
        return self.inner(v, v)

    def inner(self, u: Vector, v: Vector) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(self.rank) if u[i] for j in range(self.rank) if v[j])

    def coroot_pairing(self, v: Vector, beta: Vector) -> int:
        """<v, beta^vee> for v, beta in root coordinates."""
        num = 2 * self.inner(v, beta)
        den = self.norm2(beta)
        assert num % den == 0
        return num // den

    def to_weight(self, v: Vector) -> Vector:
        """Express a root-lattice vector in fundamental-weight coordinates."""
        a = self.cartan
        return tuple(sum(a[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank))

    def simple_root(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.rank))

    def is_root(self, v: Vector) -> bool:
        return v in self._index or tuple(-x for x in v) in self._index

    # -- Weyl group --------------------------------------------------------

    @cached_property
    def identity(self) -> WeylElement:
        return WeylElement(tuple(self.simple_root(i) for i in range(self.rank)), 0)

    def length(self, w: WeylElement) -> int:
        return sum(1 for beta in self.positive_roots if _is_negative(w.apply(beta)))

    def reflect(self, v: Vector, beta: Vector) -> Vector:
        c = self.coroot_pairing(v, beta)
        return tuple(x - c * b for x, b in zip(v, beta))

    def times_reflection(self, w: WeylElement, beta: Vector, length: int | None = None) -> WeylElement:
        """w o s_beta."""
        images = tuple(w.apply(self.reflect(self.simple_root(j), beta)) for j in range(self.rank))
        el = WeylElement(images, 0)
        return WeylElement(images, self.length(el) if length is None else length)

    def longest_element(self, nodes=None) -> WeylElement:
        """Longest element of the parabolic subgroup on ``nodes`` (0-based), by greedy ascent."""
        nodes = range(self.rank) if nodes is None else list(nodes)
        w = self.identity
        ell = 0
        while True:
            for i in nodes:
                if not _is_negative(w.images[i]):
                    ell += 1
                    w = self.times_reflection(w, self.simple_root(i), ell)
                    break
            else:
                return w


def build_root_system(type_label: str, rank: int, max_rank: int = DEFAULT_MAX_RANK) -> RootSystem:
    """Construct the root system of a simple type with positive roots closed under reflections."""
    try:
        rank = int(rank)
    except (TypeError, ValueError):
        raise ConfigurationError(f"rank must be an integer, got {rank!r}")
    if rank < 1:
        raise ConfigurationError(f"rank must be positive, got {rank}")
    label = normalize_type(type_label, rank)
    if rank > max_rank:
        raise ResourceError(f"rank {rank} exceeds the cap {max_rank}")
    gram = _gram_matrix(label[0] if label in "ABCD" else label, rank)
    cartan = tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(rank)) for i in range(rank))

    simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                c = sum(cartan[i][j] * v[j] for j in range(rank))
                if c == 0:
                    continue
                u = list(v)
                u[i] -= c
                u = tuple(u)
                if all(x >= 0 for x in u) and u not in roots:
                    roots.add(u)
                    nxt.append(u)
        frontier = nxt
    positive = tuple(sorted(roots, key=lambda v: (sum(v), tuple(-x for x in v))))
    heights = [sum(v) for v in positive]
    top = [v for v, h in zip(positive, heights) if h == max(heights)]
    assert len(top) == 1
    highest = top[0]

    def norm2(v):
        return sum(v[i] * gram[i][j] * v[j] for i in range(rank) for j in range(rank))

    pairings = []
    for i in range(rank):
        row = []
        for beta in positive:
            num, den = beta[i] * gram[i][i], norm2(beta)
            assert num % den == 0
            row.append(num // den)
        pairings.append(tuple(row))
    pairings = tuple(pairings)
    return RootSystem(label, rank, cartan, tuple(map(tuple, gram)), positive, highest, pairings)


# -- parabolic quotient ----------------------------------------------------


@dataclass(frozen=True)
class CosetData:
    """All minimal coset representatives of W/W_P, grouped by degree."""

    rs: RootSystem
    node: int
    levels: tuple[tuple[CosetElement, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.levels) - 1

    @cached_property
    def by_weight(self) -> dict:
        return {c.weight: c for level in self.levels for c in level}

    @cached_property
    def by_element(self) -> dict:
        return {c.element: c for level in self.levels for c in level}

    @cached_property
    def longest(self) -> tuple[WeylElement, WeylElement]:
        """(w0, w0_P)."""
        rs = self.rs
        return rs.longest_element(), rs.longest_element(j for j in range(rs.rank) if j != self.node - 1)

    def __iter__(self):
        for level in self.levels:
            yield from level

    def __len__(self):
        return sum(len(level) for level in self.levels)


def _check_node(rs: RootSystem, node: int) -> None:
    if not isinstance(node, int) or not 1 <= node <= rs.rank:
        raise ConfigurationError(f"node must be in 1..{rs.rank}, got {node!r}")


def lex_word(rs: RootSystem, weight: Vector) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of the coset element with this weight.

    The first letter is the smallest left descent, i.e. the smallest i with
    <mu, alpha_i^vee> < 0; then recurse on s_i(mu).
    """
    word = []
    mu = list(weight)
    while True:
        for i in range(rs.rank):
            if mu[i] < 0:
                c = mu[i]
                for k in range(rs.rank):
                    mu[k] -= c * rs.cartan[k][i]
                word.append(i + 1)
                break
        else:
            return tuple(word)


def _type_a_partition(weight: Vector, node: int) -> tuple[int, ...]:
    # epsilon-coordinates of an A_{m-1} weight in the orbit of varpi_p are 0/1.
    m = len(weight) + 1
    # Coordinates are only defined up to a common shift.
    eps = [sum(weight[k:]) for k in range(m - 1)] + [0]
    top = max(eps)
    ones = [k + 1 for k, e in enumerate(eps) if e == top]
    assert len(ones) == node and all(e in (top - 1, top) for e in eps)
    return tuple(sorted((s - j for j, s in enumerate(ones, start=1)), reverse=True))


def coset_reps(rs: RootSystem, node: int, cap: int | None = None) -> CosetData:
    """Enumerate W^P for the maximal parabolic of ``node`` breadth-first by degree."""
    _check_node(rs, node)
    cap = max_classes() if cap is None else cap
    r = rs.rank
    alpha_w = [tuple(rs.cartan[k][i] for k in range(r)) for i in range(r)]
    start_weight = tuple(int(k == node - 1) for k in range(r))

    def make(weight, element):
        alias = None
        if rs.type_label == "A":
            alias = partition_label(_type_a_partition(weight, node))
        return CosetElement(lex_word(rs, weight), element, weight, alias)

    level = [make(start_weight, rs.identity)]
    levels = [tuple(level)]
    total = 1
    while True:
        found = {}
        for c in level:
            mu = c.weight
            for i in range(r):
                if mu[i] <= 0:
                    continue
                nu = tuple(x - mu[i] * a for x, a in zip(mu, alpha_w[i]))
                if nu in found:
                    continue
                # s_i o w: apply s_i to every image.
                beta = rs.simple_root(i)
                images = tuple(rs.reflect(img, beta) for img in c.element.images)
                found[nu] = WeylElement(images, c.degree + 1)
        if not found:
            break
        total += len(found)
        if total > cap:
            raise ResourceError(f"|W^P| exceeds the class cap {cap} for {rs.type_label}{rs.rank} node {node}")
        level = sorted((make(nu, el) for nu, el in found.items()), key=lambda c: c.label)
        levels.append(tuple(level))
    return CosetData(rs, node, tuple(levels))


def dimension(rs: RootSystem, node: int) -> int:
    """dim G/P = number of positive roots with positive alpha_node coefficient."""
    _check_node(rs, node)
    return sum(1 for p in rs.coroot_pairings[node - 1] if p > 0)


def chevalley(data: CosetData, w: CosetElement) -> list[tuple[CosetElement, int]]:
    """Successors of ``w`` under multiplication by the hyperplane class, with coefficients."""
    rs, node = data.rs, data.node
    out = {}
    for k, beta in enumerate(rs.positive_roots):
        c = rs.coroot_pairings[node - 1][k]
        if c <= 0:
            continue
        gamma = w.element.apply(beta)
        nu = tuple(x - c * g for x, g in zip(w.weight, rs.to_weight(gamma)))
        target = data.by_weight.get(nu)
        if target is None or target.degree != w.degree + 1:
            continue
        candidate = rs.times_reflection(w.element, beta, target.degree)
        if candidate == target.element:
            assert target.label not in out
            out[target.label] = (target, c)
    return sorted(out.values(), key=lambda tc: tc[0].label)


def min_rep(rs: RootSystem, node: int, w: WeylElement) -> WeylElement:
    """Minimal-length element of the coset w W_P."""
    while True:
        for j in range(rs.rank):
            if j != node - 1 and _is_negative(w.images[j]):
                w = rs.times_reflection(w, rs.simple_root(j), 0)
                break
        else:
            return WeylElement(w.images, rs.length(w))


def duality_map(data: CosetData) -> dict[str, str]:
    """Poincare-duality involution w -> min rep of w0 w w0_P, as a label map."""
    rs, node = data.rs, data.node
    w0, w0p = data.longest
    out = {}
    for c in data:
        v = min_rep(rs, node, w0.compose(c.element, 0).compose(w0p, 0))
        out[c.label] = data.by_element[v].label
    return out


def duality_via_weights(data: CosetData) -> dict[str, str]:
    """Same involution, computed from w0 = -(diagram involution) on weights."""
    rs = data.rs
    iota = _diagram_involution(rs.type_label, rs.rank)
    out = {}
    for c in data:
        nu = tuple(-c.weight[iota[i]] for i in range(rs.rank))
        out[c.label] = data.by_weight[nu].label
    return out


def duality(data: CosetData, w: CosetElement) -> CosetElement:
    rs, node = data.rs, data.node
    w0, w0p = data.longest
    v = min_rep(rs, node, w0.compose(w.element, 0).compose(w0p, 0))
    return data.by_element[v]


def is_cominuscule(rs: RootSystem, node: int) -> bool:
    _check_node(rs, node)
    return rs.highest_root[node - 1] == 1
