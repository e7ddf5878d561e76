"""Curve data, the two-row matrix M and the quadratic forms q, q', q''.

Given a Schubert model of Y with N = 2(n-1), T indexes classes of codimension
n-2, U the middle classes.  The class of X is sum a_t sigma(t) with every
a_t > 0, the divisor D is sum alpha_u sigma(u), and ``c[t][u]`` is the
coefficient of sigma(u) in H . sigma(t).  Everything is exact over ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .cohomology import SpaceModel, middle_analysis, sets_T_U
from .errors import ApplicabilityError, ValidationError
from .exact import parse_fraction, zeros
from .rootsys import build_root_system, is_cominuscule

CUMBERSOME_HINT = (
    "every a_t must be a positive integer: a cumbersome X meets every "
    "n-dimensional Schubert class (X is said to be cumbersome if [X].[Z] != 0 "
    "whenever dim Z >= codim X)"
)


@dataclass(frozen=True)
class MiddleData:
    """T, U, the Chevalley block T -> U and the duality on U."""

    T: tuple[str, ...]
    U: tuple[str, ...]
    c: tuple[tuple[int, ...], ...]  # c[t][u]
    star: tuple[int, ...]  # star[u] = index of u*
    aliases: dict = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, model: SpaceModel) -> "MiddleData":
        T, U = sets_T_U(model)
        k = T[0].degree if T else None
        c = model.chev_matrix(k) if T else []
        star = model.dual[U[0].degree]
        aliases = {x.label: x.alias for x in (*T, *U) if x.alias is not None}
        return cls(tuple(t.label for t in T), tuple(u.label for u in U), tuple(map(tuple, c)), tuple(star), aliases)

    def display(self, label: str) -> str:
        return self.aliases.get(label, label)


@dataclass(frozen=True)
class InputClasses:
    """Coefficients of [X] over T, of [D] over U and, optionally, lambda over T."""

    a: tuple[int, ...]
    alpha: tuple[int, ...]
    lam: tuple[Fraction, ...] | None = None


def make_input(model: SpaceModel, a, alpha=None, lam=None) -> InputClasses:
    """Validate label-keyed (or positional) coefficient data against the model.

    ``a`` and ``lam`` are keyed by T labels, ``alpha`` by U labels; word labels
    and partition aliases are both accepted.  Missing ``alpha`` means zero.
    """
    md = MiddleData.of(model)
    a_vec = _vector(model, md.T, a, "a")
    for label, v in zip(md.T, a_vec):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError(f"a[{md.display(label)}] must be an integer, got {v!r}")
        if v <= 0:
            raise ValidationError(f"a[{md.display(label)}] = {v}: {CUMBERSOME_HINT}")
    if alpha is None:
        alpha_vec = (0,) * len(md.U)
    else:
        alpha_vec = _vector(model, md.U, alpha, "alpha")
        for label, v in zip(md.U, alpha_vec):
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"alpha[{md.display(label)}] must be an integer, got {v!r}")
            if v < 0:
                raise ValidationError(f"alpha[{md.display(label)}] = {v} must be non-negative")
    lam_vec = None
    if lam is not None:
        raw = _vector(model, md.T, lam, "lambda")
        try:
            lam_vec = tuple(parse_fraction(v) for v in raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"lambda entries must be rationals: {exc}")
    return InputClasses(tuple(a_vec), tuple(alpha_vec), lam_vec)


def _vector(model: SpaceModel, labels, values, name):
    if isinstance(values, dict):
        out = {}
        for key, v in values.items():
            c = model.by_label.get(str(key))
            if c is None or c.label not in labels:
                raise ValidationError(f"{name}: unknown label {key!r}")
            if c.label in out:
                raise ValidationError(f"{name}: label {key!r} given twice")
            out[c.label] = v
        missing = [label for label in labels if label not in out]
        if missing:
            raise ValidationError(f"{name}: missing entries for {missing}")
        return tuple(out[label] for label in labels)
    values = tuple(values)
    if len(values) != len(labels):
        raise ValidationError(f"{name}: expected {len(labels)} entries, got {len(values)}")
    return values


# -- curve data and M --------------------------------------------------------


@dataclass(frozen=True)
class CurveData:
    x: tuple[int, ...]  # H_X . C(u)
    y: tuple[int, ...]  # D . C(u) = alpha_{u*}
    z: tuple[int, ...]  # H_X . C(t)
    d: tuple[int, ...]  # H_{S_t}^2


def _x_and_d(md: MiddleData, a) -> tuple[list[int], list[int]]:
    nT, nU = len(md.T), len(md.U)
    x = [sum(md.c[t][md.star[u]] * a[t] for t in range(nT)) for u in range(nU)]
    d = [sum(md.c[t][u] * x[u] for u in range(nU)) for t in range(nT)]
    return x, d


def curve_data(model: SpaceModel, inp: InputClasses) -> CurveData:
    md = MiddleData.of(model)
    return _curve_data(md, inp)


def _curve_data(md: MiddleData, inp: InputClasses) -> CurveData:
    nT, nU = len(md.T), len(md.U)
    x, d = _x_and_d(md, inp.a)
    y = [inp.alpha[md.star[u]] for u in range(nU)]
    z = [sum(md.c[t][md.star[u]] * inp.alpha[u] for u in range(nU)) for t in range(nT)]
    if any(v <= 0 for v in x) or any(v <= 0 for v in d):
        raise ValidationError(f"curve degrees must be positive (x={x}, d={d}); {CUMBERSOME_HINT}")
    return CurveData(tuple(x), tuple(y), tuple(z), tuple(d))


SYMBOLIC = None


@dataclass(frozen=True)
class MethodMatrix:
    """Two rows, columns U then T; a ``None`` entry is a symbolic lambda_t."""

    columns: tuple[str, ...]
    top: tuple[Fraction, ...]
    bottom: tuple[Fraction | None, ...]

    @property
    def symbolic(self) -> bool:
        return any(v is None for v in self.bottom)

    def rows(self):
        return [list(self.top), list(self.bottom)]


def build_M(model: SpaceModel, inp: InputClasses) -> MethodMatrix:
    md = MiddleData.of(model)
    cd = _curve_data(md, inp)
    top = [Fraction(v) for v in cd.x] + [Fraction(v) for v in cd.z]
    lam = list(inp.lam) if inp.lam is not None else [SYMBOLIC] * len(md.T)
    bottom = [Fraction(v) for v in cd.y] + lam
    return MethodMatrix(md.U + md.T, tuple(top), tuple(bottom))


def rank_one_test(M) -> bool:
    """True iff every 2x2 minor of the two-row matrix vanishes."""
    if isinstance(M, MethodMatrix):
        top, bottom = M.top, M.bottom
    else:
        top, bottom = M
    if any(v is None for v in bottom):
        raise ValidationError("lambda required for rank test")
    top = [Fraction(v) for v in top]
    bottom = [Fraction(v) for v in bottom]
    n = len(top)
    return all(top[i] * bottom[j] - top[j] * bottom[i] == 0 for i in range(n) for j in range(i + 1, n))


# -- P, Hodge_t ----------------------------------------------------------------


def _need_lambda(inp: InputClasses):
    if inp.lam is None:
        raise ValidationError("lambda values are required for this operation")
    return inp.lam


def p_class(model: SpaceModel, inp: InputClasses) -> Fraction:
    """P = sum_u alpha_u alpha_{u*} - sum_t a_t lambda_t."""
    lam = _need_lambda(inp)
    md = MiddleData.of(model)
    first = sum(inp.alpha[u] * inp.alpha[md.star[u]] for u in range(len(md.U)))
    return Fraction(first) - sum(a * lt for a, lt in zip(inp.a, lam))


def hodge_t(model: SpaceModel, inp: InputClasses, t) -> Fraction:
    """d_t lambda_t - z_t^2; ``t`` is a T label or index."""
    lam = _need_lambda(inp)
    md = MiddleData.of(model)
    ti = _t_index(model, md, t)
    cd = _curve_data(md, inp)
    return cd.d[ti] * lam[ti] - cd.z[ti] ** 2


def _t_index(model, md, t) -> int:
    if isinstance(t, int):
        return t
    c = model.by_label.get(t)
    if c is None or c.label not in md.T:
        raise ValidationError(f"unknown T label {t!r}")
    return md.T.index(c.label)


# -- quadratic forms -----------------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric matrix over Q indexed by U; value(alpha) = alpha^T Q alpha."""

    labels: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        assert len(self.matrix) == n and all(len(r) == n for r in self.matrix)
        assert all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(n)), "not symmetric"

    @classmethod
    def from_rows(cls, labels, rows) -> "QuadraticForm":
        return cls(tuple(labels), tuple(tuple(Fraction(v) for v in r) for r in rows))

    def value(self, alpha) -> Fraction:
        n = len(self.labels)
        return sum(
            (self.matrix[i][j] * alpha[i] * alpha[j] for i in range(n) for j in range(n) if alpha[i] and alpha[j]),
            Fraction(0),
        )

    def __sub__(self, other: "QuadraticForm") -> "QuadraticForm":
        assert self.labels == other.labels
        return QuadraticForm(
            self.labels, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        )

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.matrix for v in r)


def _add_square(mat, weight: Fraction, form: dict[int, Fraction]) -> None:
    """mat += weight * l l^T for the sparse linear form l."""
    for i, li in form.items():
        for j, lj in form.items():
            mat[i][j] += weight * li * lj


def _minor_form(xu, ustar_target, xv, vstar_target) -> dict[int, Fraction]:
    # x_u * alpha_{target1} - x_v * alpha_{target2}
    form: dict[int, Fraction] = {}
    form[ustar_target] = form.get(ustar_target, Fraction(0)) + xu
    form[vstar_target] = form.get(vstar_target, Fraction(0)) - xv
    return form


class _Forms:
    """Shared precomputation for the three quadratic forms of one (model, a)."""

    def __init__(self, md: MiddleData, a):
        self.md = md
        self.a = tuple(a)
        self.x, self.d = _x_and_d(md, self.a)
        if any(v <= 0 for v in self.x) or any(v <= 0 for v in self.d):
            raise ValidationError(f"curve degrees must be positive (x={self.x}, d={self.d}); {CUMBERSOME_HINT}")

    @cached_property
    def q(self) -> QuadraticForm:
        md, a, d = self.md, self.a, self.d
        nU = len(md.U)
        mat = zeros(nU)
        for u in range(nU):
            mat[u][md.star[u]] += 1
        for t in range(len(md.T)):
            zvec = {u: Fraction(md.c[t][md.star[u]]) for u in range(nU) if md.c[t][md.star[u]]}
            _add_square(mat, -Fraction(a[t], d[t]), zvec)
        return QuadraticForm.from_rows(md.U, mat)

    @cached_property
    def q_prime(self) -> QuadraticForm:
        md, a, d, x = self.md, self.a, self.d, self.x
        nU = len(md.U)
        mat = zeros(nU)
        for t in range(len(md.T)):
            support = [u for u in range(nU) if md.c[t][u]]
            for u in support:
                for v in support:
                    if u == v:
                        continue
                    w = Fraction(a[t] * md.c[t][u] * md.c[t][v], d[t] * x[u] * x[v]) / 2
                    _add_square(mat, w, _minor_form(x[u], md.star[v], x[v], md.star[u]))
        return QuadraticForm.from_rows(md.U, mat)

    @cached_property
    def q_doubleprime(self) -> QuadraticForm:
        md, x = self.md, self.x
        nU = len(md.U)
        mat = zeros(nU)
        for u in range(nU):
            us = md.star[u]
            if us == u:
                continue
            w = Fraction(1, x[u] * x[us]) / 2
            _add_square(mat, w, _minor_form(x[u], u, x[us], us))
        return QuadraticForm.from_rows(md.U, mat)


def _forms(model: SpaceModel, inp) -> _Forms:
    a = inp.a if isinstance(inp, InputClasses) else inp
    return _Forms(MiddleData.of(model), a)


def q_form(model: SpaceModel, inp) -> QuadraticForm:
    """Q = P_* - sum_t (a_t / d_t) z_t z_t^T, the lambda-free form of P + sum (a_t/d_t) Hodge_t."""
    return _forms(model, inp).q


def q_prime(model: SpaceModel, inp) -> QuadraticForm:
    return _forms(model, inp).q_prime


def q_doubleprime(model: SpaceModel, inp) -> QuadraticForm:
    return _forms(model, inp).q_doubleprime


def verify_decomposition(model: SpaceModel, inp, rhs_model: SpaceModel | None = None) -> bool:
    """Q == Q' - Q'' exactly.

    ``rhs_model`` substitutes another model for the right-hand side only; it
    exists so that fault-injection tests can show a corrupted Chevalley table
    is caught.
    """
    lhs = _forms(model, inp)
    rhs = lhs if rhs_model is None else _forms(rhs_model, inp)
    return lhs.q == rhs.q_prime - rhs.q_doubleprime


def eq1_value(model: SpaceModel, inp: InputClasses) -> Fraction:
    """P + sum_t (a_t / d_t) Hodge_t, evaluated with the supplied lambda."""
    lam = _need_lambda(inp)
    md = MiddleData.of(model)
    cd = _curve_data(md, inp)
    first = sum(inp.alpha[u] * inp.alpha[md.star[u]] for u in range(len(md.U)))
    total = Fraction(first) - sum(a * lt for a, lt in zip(inp.a, lam))
    for t in range(len(md.T)):
        hodge = cd.d[t] * lam[t] - cd.z[t] ** 2
        total += Fraction(inp.a[t], cd.d[t]) * hodge
    return total


def eq1_crosscheck(model: SpaceModel, inp: InputClasses) -> bool:
    return eq1_value(model, inp) == q_form(model, inp).value(inp.alpha)


def multiple_of_H_test(model: SpaceModel, inp: InputClasses) -> tuple[bool, list[tuple[str, str]]]:
    """Check x_u alpha_u = x_{u*} alpha_{u*} on every swapped pair {u, u*}.

    Self-dual u give a vacuous condition and are skipped.  Violations are
    returned once per unordered pair, as (u, u*) display labels.
    """
    md = MiddleData.of(model)
    x, _ = _x_and_d(md, inp.a)
    bad = []
    for u in range(len(md.U)):
        us = md.star[u]
        if us <= u:
            continue
        if x[u] * inp.alpha[u] != x[us] * inp.alpha[us]:
            bad.append((md.display(md.U[u]), md.display(md.U[us])))
    return not bad, bad


def condition_count(model: SpaceModel) -> int:
    return len(middle_analysis(model).U_hyp) // 2


# -- cominuscule inequality ----------------------------------------------------


@dataclass(frozen=True)
class PairCheck:
    u: str
    u_star: str
    t_candidates: tuple[str, ...]
    x_u: int
    x_u_star: int
    d_t: int | None = None
    a_t: int | None = None

    @property
    def unique(self) -> bool:
        return len(self.t_candidates) <= 1

    @property
    def upper_ok(self) -> bool | None:
        """d_t >= x_u + x_{u*}; None when no t meets both classes."""
        if self.d_t is None:
            return None
        return self.d_t >= self.x_u + self.x_u_star

    @property
    def lower_ok(self) -> bool | None:
        """x_u + x_{u*} >= 2 a_t."""
        if self.a_t is None:
            return None
        return self.x_u + self.x_u_star >= 2 * self.a_t

    @property
    def ok(self) -> bool:
        return self.unique and self.upper_ok is not False and self.lower_ok is not False


@dataclass(frozen=True)
class CominusculeReport:
    pairs: tuple[PairCheck, ...]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.pairs)


def cominuscule_inequality_check(model: SpaceModel, inp: InputClasses) -> CominusculeReport:
    t_label, rank, node = model.space_id
    if not is_cominuscule(build_root_system(t_label, rank), node):
        raise ApplicabilityError(f"{model.name} is not cominuscule")
    md = MiddleData.of(model)
    x, d = _x_and_d(md, inp.a)
    checks = []
    for u in range(len(md.U)):
        us = md.star[u]
        if us <= u:
            continue
        ts = [t for t in range(len(md.T)) if md.c[t][u] * md.c[t][us] != 0]
        labels = tuple(md.display(md.T[t]) for t in ts)
        kw = {}
        if len(ts) == 1:
            kw = {"d_t": d[ts[0]], "a_t": inp.a[ts[0]]}
        checks.append(PairCheck(md.display(md.U[u]), md.display(md.U[us]), labels, x[u], x[us], **kw))
    return CominusculeReport(tuple(checks))
