# # Loopcore Overview

# The loop-algebra side: the simple Lie algebra g with its diagram
# automorphism σ, the twisted loop algebra L(g, σ), the Kähler module K, the
# toroidal algebra T(g) = L(g, σ) ⊕ K and the maps ψ and π̄ from the
# presentation t(g).

# ## Types

# - **`SimpleLieAlgebra`**: Chevalley basis built from the simply-laced root system.
# - **`GElement`**, **`LoopElement`**, **`KahlerElement`**, **`ToroidalElement`**.
# - **`PsiReading`**: CORRECTED (default) or UNCORRECTED images of α₀ and X(α₀).

# ## Methods

# - **`build_algebra(kind)`**, **`fixed_generators(kind)`**, **`theta0_triple(kind)`**
# - **`kahler_reduce(b, da, r)`**, **`toroidal_bracket(x, y, algebra)`**
# - **`psi(symbol, k, kind)`**, **`pibar(symbol, k, kind)`**, **`eta(element)`**
# - **`check_psi_homomorphism(kind, mode_bound)`**: relations (1)-(12) in the image of ψ.
# - **`pairing_table(kind)`**, **`closed_form_pairing_table(kind)`**
# - **`loop_degree(kind, element)`**, **`twist_projection(algebra, x, m)`**, **`is_twisted(algebra, element)`**

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from itertools import product
from typing import Dict, Hashable, Iterable, List, Optional, Set, Tuple

import numpy as np
from loguru import logger
from typing_extensions import deprecated

from ..utils.model_pydantic import AlgebraKind, Family, RelationRecord, Report
from .mrycheck import (
    CENTRAL,
    PROPERTY_RECORD_ID,
    RELATION_NAMES,
    Degree,
    GeneratorSymbol,
    H,
    Role,
    X,
    finish_record,
    pair_relation,
    relation_instances,
    relation_table,
    symbols,
)
from .scalars import ONE, ZERO, Scalar, ScalarLike, root_of_unity, sqrt2

Root = Tuple[int, ...]
LoopKey = Tuple[int, int, int]
KahlerKey = Tuple[str, int, int]

SDS = "sds"
TDT = "tdt"


class Combination:
    """Finite Scalar-combination over hashable, sortable keys; zero terms are pruned."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Hashable, ScalarLike]] = None):
        self._terms: Dict = {}
        for key, coeff in (terms or {}).items():
            self._accumulate(key, Scalar.coerce(coeff))

    def _accumulate(self, key, coeff: Scalar) -> None:
        if not coeff:
            return
        value = self._terms.get(key, ZERO) + coeff
        if value:
            self._terms[key] = value
        else:
            self._terms.pop(key, None)

    @classmethod
    def basis(cls, key):
        return cls({key: ONE})

    def items(self) -> Iterable[Tuple[Hashable, Scalar]]:
        return self._terms.items()

    def coefficient(self, key) -> Scalar:
        return self._terms.get(key, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other):
        result = type(self)(self._terms)
        for key, coeff in other._terms.items():
            result._accumulate(key, coeff)
        return result

    def __neg__(self):
        return type(self)({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scale: ScalarLike):
        factor = Scalar.coerce(scale)
        return type(self)({key: factor * coeff for key, coeff in self._terms.items()})

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff!r}){key}" for key, coeff in sorted(self._terms.items()))
        return f"{type(self).__name__}({body or '0'})"


class GElement(Combination):
    """Element of g in the Chevalley basis (keys are basis indices)."""


class LoopElement(Combination):
    """Σ x_a ⊗ s^j t^m, keyed by (basis index, j, m)."""

    def to_json(self) -> List[dict]:
        return [
            {"basis_index": a, "j": j, "m": m, "coeff": coeff.to_json()} for (a, j, m), coeff in sorted(self.items())
        ]


class KahlerElement(Combination):
    """
    Element of K in the basis s^{j-1} t^m ds (key ("sds", j, m), m != 0 or
    j = m = 0 for c₀ = s^{-1}ds) and s^j t^{-1} dt (key ("tdt", j, 0)).
    """

    def to_json(self) -> List[dict]:
        return [
            {"basis": basis, "j": j, "m": m, "coeff": coeff.to_json()} for (basis, j, m), coeff in sorted(self.items())
        ]


C0: KahlerKey = (SDS, 0, 0)
C1: KahlerKey = (TDT, 0, 0)


@dataclass(frozen=True)
class ToroidalElement:
    loop: LoopElement
    central: KahlerElement

    @classmethod
    def zero(cls) -> "ToroidalElement":
        return cls(LoopElement(), KahlerElement())

    def __add__(self, other: "ToroidalElement") -> "ToroidalElement":
        return ToroidalElement(self.loop + other.loop, self.central + other.central)

    def __neg__(self) -> "ToroidalElement":
        return ToroidalElement(-self.loop, -self.central)

    def __sub__(self, other: "ToroidalElement") -> "ToroidalElement":
        return self + (-other)

    def __rmul__(self, scale: ScalarLike) -> "ToroidalElement":
        return ToroidalElement(scale * self.loop, scale * self.central)

    def is_zero(self) -> bool:
        return self.loop.is_zero() and self.central.is_zero()

    def to_json(self) -> dict:
        return {"loop": self.loop.to_json(), "central": self.central.to_json()}


def _dynkin(kind: AlgebraKind) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Cartan matrix of g and σ on nodes 1..N (as a 0-based tuple of 1-based images)."""
    n, family = kind.n, kind.family
    if family == Family.A_ODD:
        size = 2 * n - 1
        edges = [(i, i + 1) for i in range(1, size)]
        sigma = tuple(size + 1 - i for i in range(1, size + 1))
    elif family == Family.A_EVEN:
        size = 2 * n
        edges = [(i, i + 1) for i in range(1, size)]
        sigma = tuple(size + 1 - i for i in range(1, size + 1))
    elif family == Family.D:
        size = n + 1
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 1, n), (n - 1, n + 1)]
        sigma = tuple(list(range(1, n)) + [n + 1, n])
    else:
        size = 4
        edges = [(1, 2), (2, 3), (2, 4)]
        sigma = (3, 2, 4, 1)
    cartan = 2 * np.eye(size, dtype=int)
    for i, j in edges:
        cartan[i - 1, j - 1] = cartan[j - 1, i - 1] = -1
    cartan.setflags(write=False)
    return cartan, sigma


def _theta_root(kind: AlgebraKind, size: int) -> Root:
    n, family = kind.n, kind.family
    if family == Family.A_ODD:
        top = 2 * n - 2
    elif family == Family.D:
        top = n
    elif family == Family.A_EVEN:
        top = 2 * n
    else:
        top = 3
    return tuple(1 if k < top else 0 for k in range(size))


class SimpleLieAlgebra:
    """
    Simply-laced simple Lie algebra with a Chevalley basis and a diagram automorphism.

    Key Features:
    1. Basis h'_1..h'_N, then E_α for positive roots by height, then E_{−α}.
    2. Brackets follow the sign function ε(α, β) = (−1)^{Σ a_i b_i + Σ_{i<j} a_i b_j A_ij}:
       [E_α, E_β] = ε(α, β) E_{α+β}, [E_α, E_{−α}] = −α, [h, E_α] = α(h) E_α.
    3. Invariant form with (h'_i|h'_j) = A_ij and (E_α|E_β) = −δ_{α,−β}.
    4. Chevalley generators e'_i = E_{α_i}, f'_i = −E_{−α_i}, h'_i = α_i, so [e'_i, f'_i] = h'_i.
    5. σ sends e'_i, f'_i, h'_i to e'_{σ(i)}, f'_{σ(i)}, h'_{σ(i)}; on higher root vectors its
       signs follow from σ[E_{α_i}, E_β] = [σE_{α_i}, σE_β].

    Attributes:
        kind (AlgebraKind): The algebra kind the Lie algebra belongs to.
        cartan (np.ndarray): N x N Cartan matrix.
        sigma_nodes (tuple): σ(i) for nodes i = 1..N.
        r (int): Order of σ.
        omega (Scalar): The primitive r-th root of unity.
        positive_roots (list): Positive roots as coefficient tuples, by height.
        theta (tuple): The root θ⁰.
    """

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.cartan, self.sigma_nodes = _dynkin(kind)
        self.rank = self.cartan.shape[0]
        self.r = kind.r
        self.omega = root_of_unity(self.r)
        self._eps_matrix = np.triu(self.cartan, 1) + np.eye(self.rank, dtype=int)
        self.positive_roots = self._positive_roots()
        self._roots: List[Optional[Root]] = [None] * self.rank
        self._roots += list(self.positive_roots) + [tuple(-c for c in root) for root in self.positive_roots]
        self._index = {root: index for index, root in enumerate(self._roots) if root is not None}
        self.dimension = len(self._roots)
        self.theta = _theta_root(kind, self.rank)
        self._structure = self._structure_constants()
        self._form = self._form_values()
        self._sigma_perm, self._sigma_sign = self._sigma_action()
        logger.debug(f"built Lie algebra for {kind.label}: rank {self.rank}, dimension {self.dimension}")

    def inner(self, a: Root, b: Root) -> int:
        return int(np.array(a) @ self.cartan @ np.array(b))

    def epsilon(self, a: Root, b: Root) -> int:
        exponent = int(np.array(a) @ self._eps_matrix @ np.array(b))
        return -1 if exponent % 2 else 1

    def _simple(self, i: int) -> Root:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def _positive_roots(self) -> List[Root]:
        simple = [self._simple(i) for i in range(self.rank)]
        roots = list(simple)
        seen = set(roots)
        frontier = list(simple)
        while frontier:
            following = []
            for beta in frontier:
                for i, alpha in enumerate(simple):
                    if self.inner(beta, alpha) != -1:
                        continue
                    candidate = tuple(b + a for b, a in zip(beta, alpha))
                    if candidate not in seen:
                        seen.add(candidate)
                        following.append(candidate)
            roots += following
            frontier = following
        return sorted(roots, key=lambda root: (sum(root), root))

    def root_of(self, index: int) -> Optional[Root]:
        """The root of a basis index; None for the Cartan part."""
        return self._roots[index]

    def index_of(self, root: Root) -> int:
        if root not in self._index:
            raise ValueError(f"{root} is not a root")
        return self._index[root]

    def is_root(self, root: Root) -> bool:
        return root in self._index

    def _basis_bracket(self, a: int, b: int) -> Dict[int, int]:
        alpha, beta = self._roots[a], self._roots[b]
        if alpha is None and beta is None:
            return {}
        if alpha is None:
            value = self.inner(self._simple(a), beta)
            return {b: value} if value else {}
        if beta is None:
            value = self.inner(self._simple(b), alpha)
            return {a: -value} if value else {}
        total = tuple(x + y for x, y in zip(alpha, beta))
        if not any(total):
            return {k: -alpha[k] for k in range(self.rank) if alpha[k]}
        if total in self._index:
            return {self._index[total]: self.epsilon(alpha, beta)}
        return {}

    def _structure_constants(self) -> Dict[Tuple[int, int], Dict[int, int]]:
        table = {}
        for a in range(self.dimension):
            for b in range(self.dimension):
                value = self._basis_bracket(a, b)
                if value:
                    table[(a, b)] = value
        return table

    def _form_values(self) -> Dict[Tuple[int, int], int]:
        values = {}
        for a in range(self.rank):
            for b in range(self.rank):
                if self.cartan[a, b]:
                    values[(a, b)] = int(self.cartan[a, b])
        for root, index in self._index.items():
            values[(index, self._index[tuple(-c for c in root)])] = -1
        return values

    def sigma_root(self, root: Root) -> Root:
        image = [0] * self.rank
        for k, coeff in enumerate(root):
            image[self.sigma_nodes[k] - 1] = coeff
        return tuple(image)

    def _sigma_action(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        perm = list(range(self.dimension))
        sign = [1] * self.dimension
        for k in range(self.rank):
            perm[k] = self.sigma_nodes[k] - 1
        signs: Dict[Root, int] = {}
        for root in self.positive_roots:
            for direction in (1, -1):
                oriented = tuple(direction * c for c in root)
                if sum(root) == 1:
                    signs[oriented] = 1
                    continue
                i = next(i for i in range(self.rank) if root[i] and self.is_root(_minus(root, self._simple(i))))
                simple = tuple(direction * c for c in self._simple(i))
                rest = _minus(oriented, simple)
                signs[oriented] = (
                    self.epsilon(simple, rest)
                    * signs[rest]
                    * self.epsilon(self.sigma_root(simple), self.sigma_root(rest))
                )
        for root, index in self._index.items():
            perm[index] = self._index[self.sigma_root(root)]
            sign[index] = signs[root]
        return tuple(perm), tuple(sign)

    def basis(self, index: int) -> GElement:
        return GElement.basis(index)

    def h(self, i: int) -> GElement:
        return GElement.basis(i - 1)

    def e(self, i: int) -> GElement:
        return GElement.basis(self._index[self._simple(i - 1)])

    def f(self, i: int) -> GElement:
        return -GElement.basis(self._index[tuple(-c for c in self._simple(i - 1))])

    def coroot(self, root: Root) -> GElement:
        """The Cartan element identified with a root through the form."""
        return GElement({k: coeff for k, coeff in enumerate(root) if coeff})

    def bracket(self, x: GElement, y: GElement) -> GElement:
        result = GElement()
        for a, s in x.items():
            for b, t in y.items():
                constants = self._structure.get((a, b))
                if constants:
                    st = s * t
                    for c, value in constants.items():
                        result._accumulate(c, st * value)
        return result

    def form(self, x: GElement, y: GElement) -> Scalar:
        total = ZERO
        for a, s in x.items():
            for b, t in y.items():
                value = self._form.get((a, b))
                if value:
                    total = total + s * t * value
        return total

    def sigma(self, x: GElement, power: int = 1) -> GElement:
        power %= self.r
        for _ in range(power):
            x = GElement({self._sigma_perm[a]: coeff * self._sigma_sign[a] for a, coeff in x.items()})
        return x

    def node_class(self, node: int) -> int:
        """The index 1..n of the σ-orbit of a node of g."""
        orbit = {node}
        image = node
        for _ in range(self.r):
            image = self.sigma_nodes[image - 1]
            orbit.add(image)
        return min(orbit)

    def label(self, index: int) -> str:
        root = self._roots[index]
        if root is None:
            return f"h'{index + 1}"
        return f"E{list(root)}"


def _minus(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


@cache
def build_algebra(kind: AlgebraKind) -> SimpleLieAlgebra:
    return SimpleLieAlgebra(kind)


def theta0_triple(kind: AlgebraKind) -> Tuple[GElement, GElement, GElement]:
    """(e'_{θ⁰}, f'_{θ⁰}, h'_{θ⁰}) with [e, f] = h and [h, e] = 2e."""
    algebra = build_algebra(kind)
    theta = algebra.theta
    e = algebra.basis(algebra.index_of(theta))
    f = -algebra.basis(algebra.index_of(tuple(-c for c in theta)))
    return e, f, algebra.coroot(theta)


def _orbit_sum(algebra: SimpleLieAlgebra, x: GElement) -> GElement:
    total = GElement()
    for p in range(algebra.r):
        total = total + algebra.sigma(x, p)
    return total


def fixed_generators(kind: AlgebraKind) -> List[Tuple[GElement, GElement, GElement]]:
    """
    Chevalley generators (e_i, f_i, h_i), i = 1..n, of the fixed-point subalgebra g₀.

    Fixed nodes keep e'_i; a moved node takes the orbit sum, except node n of
    A_{2n}, which takes √2 (e'_n + e'_{n+1}) and 2 (h'_n + h'_{n+1}).
    """
    algebra = build_algebra(kind)
    generators = []
    for i in range(1, kind.n + 1):
        e, f, h = algebra.e(i), algebra.f(i), algebra.h(i)
        if algebra.sigma_nodes[i - 1] == i:
            generators.append((e, f, h))
            continue
        e, f, h = _orbit_sum(algebra, e), _orbit_sum(algebra, f), _orbit_sum(algebra, h)
        if kind.family == Family.A_EVEN and i == kind.n:
            e, f, h = sqrt2() * e, sqrt2() * f, 2 * h
        generators.append((e, f, h))
    return generators


def kahler_reduce(b_exponents: Tuple[int, int], da_exponents: Tuple[int, int], r: int = 1) -> KahlerElement:
    """
    Canonical form of b·da for b = s^ℓ t^m and a = s^k t^p modulo exact forms.

    b·da = k s^{J-1} t^M ds + p s^J t^{M-1} dt with J = k + ℓ and M = m + p. Exactness of
    d(s^J t^M) gives s^J t^{M-1} dt = −(J/M) s^{J-1} t^M ds when M != 0, and kills
    s^{J-1} ds unless J = 0.

    Raises:
        ValueError: If the total t-degree M is not a multiple of r.
    """
    ell, m = b_exponents
    k, p = da_exponents
    J, M = k + ell, m + p
    if M % r:
        raise ValueError(f"t-degree {M} is not a multiple of {r}; b da does not lie in K")
    result = KahlerElement()
    if M != 0:
        result._accumulate((SDS, J, M), Scalar.rational(k) - Scalar.rational(Fraction(p * J, M)))
        return result
    if k and J == 0:
        result._accumulate(C0, Scalar.rational(k))
    if p:
        result._accumulate((TDT, J, 0), Scalar.rational(p))
    return result


def loop_bracket(x: LoopElement, y: LoopElement, algebra: SimpleLieAlgebra) -> ToroidalElement:
    loop = LoopElement()
    central = KahlerElement()
    # form weights are summed per exponent pair before reducing; only the sums lie in K
    weights: Dict[Tuple[int, int, int, int], Scalar] = {}
    for (a, j1, m1), s in x.items():
        for (b, j2, m2), t in y.items():
            st = s * t
            constants = algebra._structure.get((a, b))
            if constants:
                for c, value in constants.items():
                    loop._accumulate((c, j1 + j2, m1 + m2), st * value)
            value = algebra._form.get((a, b))
            if value:
                exponents = (j1, m1, j2, m2)
                weights[exponents] = weights.get(exponents, ZERO) + st * value
    for (j1, m1, j2, m2), weight in weights.items():
        if weight:
            for key, coeff in kahler_reduce((j2, m2), (j1, m1), algebra.r).items():
                central._accumulate(key, weight * coeff)
    return ToroidalElement(loop, central)


def toroidal_bracket(x: ToroidalElement, y: ToroidalElement, algebra: SimpleLieAlgebra) -> ToroidalElement:
    """[x⊗a, y⊗b] = [x, y]⊗ab + (x|y) b da; K is central."""
    return loop_bracket(x.loop, y.loop, algebra)


def tensor(x: GElement, j: int, m: int) -> LoopElement:
    return LoopElement({(a, j, m): coeff for a, coeff in x.items()})


def twist_projection(algebra: SimpleLieAlgebra, x: GElement, m: int) -> GElement:
    """Σ_p ω^{−mp} σ^p(x), an element of g_m."""
    total = GElement()
    for p in range(algebra.r):
        total = total + algebra.omega ** (-m * p) * algebra.sigma(x, p)
    return total


def is_twisted(algebra: SimpleLieAlgebra, element: LoopElement) -> bool:
    """True iff every s^j t^m component lies in g_m, that is σ(x) = ω^m x."""
    components: Dict[Tuple[int, int], GElement] = {}
    for (a, j, m), coeff in element.items():
        components[(j, m)] = components.get((j, m), GElement()) + GElement({a: coeff})
    return all(algebra.sigma(x) == algebra.omega**m * x for (_, m), x in components.items())


def loop_degree(kind: AlgebraKind, element: LoopElement) -> Set[Degree]:
    """The Z x Q-hat degrees of the terms of a loop element; α₀ counts the t-degree."""
    algebra = build_algebra(kind)
    theta0 = _restrict(algebra, algebra.theta)
    degrees = set()
    for (a, j, m), _coeff in element.items():
        root = algebra.root_of(a)
        restricted = _restrict(algebra, root) if root is not None else (0,) * kind.n
        degrees.add(Degree(j, (m,) + tuple(c + m * t for c, t in zip(restricted, theta0))))
    return degrees


def _restrict(algebra: SimpleLieAlgebra, root: Root) -> Tuple[int, ...]:
    coords = [0] * algebra.kind.n
    for node, coeff in enumerate(root, start=1):
        coords[algebra.node_class(node) - 1] += coeff
    return tuple(coords)


class PsiReading(str, Enum):
    CORRECTED = "corrected"
    UNCORRECTED = "uncorrected"


def _node_factor(algebra: SimpleLieAlgebra, i: int, cartan_part: bool) -> Scalar:
    if algebra.kind.family == Family.A_EVEN:
        if i != algebra.kind.n:
            return ONE
        return Scalar.rational(2) if cartan_part else sqrt2()
    if algebra.sigma_nodes[i - 1] == i:
        return Scalar.rational(Fraction(1, algebra.r))
    return ONE


@cache
def _psi(symbol: GeneratorSymbol, k: int, kind: AlgebraKind, reading: PsiReading) -> ToroidalElement:
    algebra = build_algebra(kind)
    r, omega = algebra.r, algebra.omega
    single = kind.family == Family.A_EVEN
    if symbol == CENTRAL:
        return ToroidalElement(LoopElement(), KahlerElement.basis(C0))
    i = symbol.index
    if not 0 <= i <= kind.n:
        raise ValueError(f"generator {symbol} out of range for {kind.label}")
    if i == 0:
        e_theta, f_theta, h_theta = theta0_triple(kind)
        if symbol.role == Role.H:
            x = -h_theta if single else _orbit_sum(algebra, -h_theta)
            if single or reading == PsiReading.UNCORRECTED:
                weight = ONE
            else:
                weight = Scalar.rational(r)
            return ToroidalElement(tensor(x, k, 0), KahlerElement({(TDT, k, 0): weight}))
        if symbol.role == Role.X_PLUS:
            if single:
                t_degree = -1 if reading == PsiReading.UNCORRECTED else 1
                return ToroidalElement(tensor(-f_theta, k, t_degree), KahlerElement())
            x = GElement()
            for p in range(r):
                x = x + omega ** (-p) * algebra.sigma(f_theta, p)
            return ToroidalElement(tensor(-x, k, 1), KahlerElement())
        if single:
            return ToroidalElement(tensor(-e_theta, k, -1), KahlerElement())
        x = GElement()
        for p in range(r):
            x = x + omega**p * algebra.sigma(e_theta, p)
        return ToroidalElement(tensor(-x, k, -1), KahlerElement())
    if symbol.role == Role.H:
        generator = algebra.h(i)
    elif symbol.role == Role.X_PLUS:
        generator = algebra.e(i)
    else:
        generator = algebra.f(i)
    factor = _node_factor(algebra, i, symbol.role == Role.H)
    return ToroidalElement(tensor(factor * _orbit_sum(algebra, generator), k, 0), KahlerElement())


def psi(
    symbol: GeneratorSymbol, k: int, kind: AlgebraKind, reading: PsiReading = PsiReading.CORRECTED
) -> ToroidalElement:
    """
    Image of the mode symbol(k) of t(g) in T(g).

    The corrected reading puts X(α₀, k) of A_{2n} on s^k t, uses ω^{−p} in the
    image of X(α₀, k) for the other families and gives the central part of
    α₀(k) the coefficient r there.

    Raises:
        ValueError: If the symbol index is outside 0..n.
    """
    return _psi(symbol, k, kind, reading)


@deprecated("the uncorrected images of α0 and X(α0) do not define a homomorphism; use psi()")
def psi_uncorrected(symbol: GeneratorSymbol, k: int, kind: AlgebraKind) -> ToroidalElement:
    return _psi(symbol, k, kind, PsiReading.UNCORRECTED)


def pibar(symbol: GeneratorSymbol, k: int, kind: AlgebraKind) -> LoopElement:
    """
    Image of symbol(k) under t(g) → L(g, σ), built from the g₀ generators.

    c̸ maps to 0. For i >= 1 the image is the g₀ Chevalley generator tensored
    with s^k; the α₀ generators go to the θ⁰ triple on s^k t^{±1}.
    """
    algebra = build_algebra(kind)
    if symbol == CENTRAL:
        return LoopElement()
    i = symbol.index
    if not 0 <= i <= kind.n:
        raise ValueError(f"generator {symbol} out of range for {kind.label}")
    if i >= 1:
        e, f, h = fixed_generators(kind)[i - 1]
        x = {Role.H: h, Role.X_PLUS: e, Role.X_MINUS: f}[symbol.role]
        return tensor(x, k, 0)
    r, omega = algebra.r, algebra.omega
    e_theta, f_theta, h_theta = theta0_triple(kind)
    if kind.family == Family.A_EVEN:
        x, t_degree = {
            Role.H: (-h_theta, 0),
            Role.X_PLUS: (-f_theta, 1),
            Role.X_MINUS: (-e_theta, -1),
        }[symbol.role]
        return tensor(x, k, t_degree)
    total = GElement()
    for p in range(r):
        if symbol.role == Role.H:
            total = total + algebra.sigma(-h_theta, p)
        elif symbol.role == Role.X_PLUS:
            total = total - algebra.sigma(omega ** (r - p) * f_theta, p)
        else:
            total = total - algebra.sigma(omega**p * e_theta, p)
    return tensor(total, k, {Role.H: 0, Role.X_PLUS: 1, Role.X_MINUS: -1}[symbol.role])


def eta(element: ToroidalElement) -> LoopElement:
    """The projection T(g) → L(g, σ)."""
    return element.loop


def check_eta_psi(
    kind: AlgebraKind, mode_bound: int, reading: PsiReading = PsiReading.CORRECTED, record_timings: bool = True
) -> RelationRecord:
    """η(ψ(x)) == π̄(x) for every generator symbol, c̸ included, and |k| <= mode_bound."""
    start = time.perf_counter()
    failure = None
    for symbol in [CENTRAL] + symbols(kind):
        for k in range(-mode_bound, mode_bound + 1):
            difference = eta(_psi(symbol, k, kind, reading)) - pibar(symbol, k, kind)
            if not difference.is_zero():
                failure = {"symbol": str(symbol), "k": k, "residual": difference.to_json()}
                break
        if failure is not None:
            break
    return finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "eta psi = pibar")


RelationRhs = Tuple[List[Tuple[GeneratorSymbol, int, Scalar]], Scalar]


def relation_rhs(kind: AlgebraKind, G: GeneratorSymbol, K: GeneratorSymbol, k: int, l: int) -> Optional[RelationRhs]:
    """
    Right-hand side of [G(k), K(l)] from relations (1)-(8).

    Returns:
        Optional[RelationRhs]: (terms, central) meaning Σ coeff·symbol(mode) + central·c̸,
        or None when no relation governs the ordered pair.
    """
    table = relation_table(kind)
    delta = k if k == -l else 0
    if G.role == Role.H and K.role == Role.H:
        return [], table.hh_coeff(G.index, K.index) * delta
    if G.role == Role.H and K.role in (Role.X_PLUS, Role.X_MINUS):
        return [(K, k + l, Scalar.rational(K.sign * table.hx_sign(G.index, K.index)))], ZERO
    if G.role == K.role and G.index == K.index:
        return [], ZERO
    if G.role == Role.X_PLUS and K.role == Role.X_MINUS and G.index == K.index:
        return [(H(G.index), k + l, ONE)], table.xx_ddelta(G.index) * delta
    if G.role == Role.X_PLUS and K.role == Role.X_MINUS:
        return [], ZERO
    if (G.role, K.role) in ((Role.X_PLUS, Role.H), (Role.X_MINUS, Role.H), (Role.X_MINUS, Role.X_PLUS)):
        swapped = relation_rhs(kind, K, G, l, k)
        if swapped is None:
            return None
        terms, central = swapped
        return [(symbol, mode, -coeff) for symbol, mode, coeff in terms], -central
    return None


def _first_failure(
    kind: AlgebraKind, G: GeneratorSymbol, K: GeneratorSymbol, mode_bound: int, reading: PsiReading
) -> Optional[dict]:
    algebra = build_algebra(kind)
    modes = range(-mode_bound, mode_bound + 1)
    for k, l in product(modes, modes):
        rhs = relation_rhs(kind, G, K, k, l)
        if rhs is None:
            raise ValueError(f"no relation governs [{G}, {K}]")
        terms, central = rhs
        expected = central * _psi(CENTRAL, 0, kind, reading)
        for symbol, mode, coeff in terms:
            expected = expected + coeff * _psi(symbol, mode, kind, reading)
        residual = toroidal_bracket(_psi(G, k, kind, reading), _psi(K, l, kind, reading), algebra) - expected
        if not residual.is_zero():
            return {"k": k, "l": l, "residual": residual.to_json()}
    return None


def check_psi_pair(
    kind: AlgebraKind,
    G: GeneratorSymbol,
    K: GeneratorSymbol,
    mode_bound: int,
    reading: PsiReading = PsiReading.CORRECTED,
    record_timings: bool = True,
) -> RelationRecord:
    """
    Compare [ψ(G(k)), ψ(K(l))] with ψ of the relation right-hand side for |k|, |l| <= mode_bound.

    Raises:
        ValueError: If no relation among (1)-(8) governs the ordered pair.
    """
    relation_id = pair_relation(kind, G, K)
    if relation_id is None:
        raise ValueError(f"no relation governs [{G}, {K}]")
    start = time.perf_counter()
    failure = _first_failure(kind, G, K, mode_bound, reading)
    return finish_record(relation_id, [G.index, K.index], failure, start, record_timings, f"psi [{G}, {K}]")


def serre_in_image(
    kind: AlgebraKind, i: int, j: int, sign: int, reading: PsiReading = PsiReading.CORRECTED
) -> ToroidalElement:
    """ad ψ(X(±α_i, 0))^{1−a_ij} ψ(X(±α_j, −1)) in T(g)."""
    algebra = build_algebra(kind)
    arity = relation_table(kind).serre_arity(i, j)
    current = _psi(X(j, sign), -1, kind, reading)
    operator = _psi(X(i, sign), 0, kind, reading)
    for _ in range(arity):
        current = toroidal_bracket(operator, current, algebra)
    return current


def check_psi_serre(
    kind: AlgebraKind,
    relation_id: int,
    indices: Tuple[int, int, int],
    reading: PsiReading = PsiReading.CORRECTED,
    record_timings: bool = True,
) -> RelationRecord:
    i, j, sign = indices
    start = time.perf_counter()
    result = serre_in_image(kind, i, j, sign, reading)
    failure = None if result.is_zero() else {"residual": result.to_json()}
    label = f"psi {RELATION_NAMES[relation_id]} ({i}, {j}, {sign})"
    return finish_record(relation_id, [i, j, sign], failure, start, record_timings, label)


def psi_relation_tasks(kind: AlgebraKind) -> List[Tuple[str, tuple]]:
    """("pair", (G, K)) for every governed ordered pair, then ("serre", (relation_id, indices))."""
    tasks: List[Tuple[str, tuple]] = [
        ("pair", (G, K)) for G in symbols(kind) for K in symbols(kind) if pair_relation(kind, G, K) is not None
    ]
    tasks += [("serre", (rid, indices)) for rid, indices in relation_instances(kind) if rid >= 9]
    return tasks


def check_psi_homomorphism(
    kind: AlgebraKind,
    mode_bound: int,
    reading: PsiReading = PsiReading.CORRECTED,
    record_timings: bool = True,
) -> Report:
    """
    Check relations (1)-(12) in the image of ψ.

    One record per ordered generator pair governed by relations (1)-(8), covering
    all modes |k|, |l| <= mode_bound; its residual is the first failing mode pair.
    One record per Serre instance with ad modes 0 and target mode −1.

    Raises:
        ValueError: If mode_bound is negative.
    """
    if mode_bound < 0:
        raise ValueError(f"mode bound must be >= 0, got {mode_bound}")
    records = []
    for task, args in psi_relation_tasks(kind):
        if task == "pair":
            G, K = args
            records.append(check_psi_pair(kind, G, K, mode_bound, reading, record_timings))
        else:
            relation_id, indices = args
            records.append(check_psi_serre(kind, relation_id, indices, reading, record_timings))
    report = Report(kind=kind.family, n=kind.n, relations=records)
    logger.info(f"{kind.label}: psi preserves {report.pass_count} relations, breaks {report.fail_count}")
    return report


def pairing_table(kind: AlgebraKind) -> Dict[Tuple[int, int, int], Scalar]:
    """(σ^p(−h'_{θ⁰}) | σ^q(h'_j)) for p, q in 0..r-1 and j in 1..n."""
    algebra = build_algebra(kind)
    _e, _f, h_theta = theta0_triple(kind)
    table = {}
    for p, q in product(range(algebra.r), repeat=2):
        left = algebra.sigma(-h_theta, p)
        for j in range(1, kind.n + 1):
            table[(p, q, j)] = algebra.form(left, algebra.sigma(algebra.h(j), q))
    return table


def closed_form_pairing_table(kind: AlgebraKind) -> Dict[Tuple[int, int, int], Scalar]:
    """
    The tabulated values of (σ^p(−h'_{θ⁰}) | σ^q(h'_j)).

    Raises:
        ValueError: For A_{2n}, where only the single term −h'_{θ⁰} occurs.
    """
    n, family, r = kind.n, kind.family, kind.r
    if family == Family.A_EVEN:
        raise ValueError("no tabulated pairing values for a-even")
    table = {}
    for p, q in product(range(r), repeat=2):
        for j in range(1, n + 1):
            d1, d2, dn = int(j == 1), int(j == 2), int(j == n)
            if family == Family.A_ODD:
                value = -d1 if p == q else d1 - d2
            elif family == Family.D:
                value = -d1 - dn if p == q else -d1 + dn
            elif (q - p) % 3 == 2:
                value = d1
            else:
                value = -d1
            table[(p, q, j)] = Scalar.rational(value)
    return table


def check_pairing_table(kind: AlgebraKind, record_timings: bool = True) -> RelationRecord:
    """
    Compare pairing_table with the tabulated values entry by entry.

    Raises:
        ValueError: For A_{2n}, which has no tabulated values.
    """
    start = time.perf_counter()
    computed, closed_form = pairing_table(kind), closed_form_pairing_table(kind)
    mismatches = [
        {"entry": list(key), "computed": computed[key].to_json(), "closed_form": closed_form[key].to_json()}
        for key in sorted(closed_form)
        if computed[key] != closed_form[key]
    ]
    failure = {"mismatches": mismatches} if mismatches else None
    return finish_record(PROPERTY_RECORD_ID, [], failure, start, record_timings, "pairing table (p, q, j)")


def jacobi_violations(algebra: SimpleLieAlgebra) -> List[Tuple[int, int, int]]:
    """Basis triples a < b < c with a nonzero Jacobi sum."""
    failures = []
    for a in range(algebra.dimension):
        x = algebra.basis(a)
        for b in range(a + 1, algebra.dimension):
            y = algebra.basis(b)
            xy = algebra.bracket(x, y)
            for c in range(b + 1, algebra.dimension):
                z = algebra.basis(c)
                total = (
                    algebra.bracket(xy, z)
                    + algebra.bracket(algebra.bracket(y, z), x)
                    + algebra.bracket(algebra.bracket(z, x), y)
                )
                if not total.is_zero():
                    failures.append((a, b, c))
    return failures


def form_violations(algebra: SimpleLieAlgebra) -> List[Tuple[int, int, int]]:
    """Basis triples where ([x, y] | z) != (x | [y, z])."""
    failures = []
    basis = [algebra.basis(a) for a in range(algebra.dimension)]
    for a, b, c in product(range(algebra.dimension), repeat=3):
        x, y, z = basis[a], basis[b], basis[c]
        if algebra.form(algebra.bracket(x, y), z) != algebra.form(x, algebra.bracket(y, z)):
            failures.append((a, b, c))
    return failures


def sigma_violations(algebra: SimpleLieAlgebra) -> List[Tuple[int, int]]:
    """Basis pairs where σ fails to preserve the bracket or the form; (a, -1) when σ^r(x_a) != x_a."""
    failures = []
    basis = [algebra.basis(a) for a in range(algebra.dimension)]
    for a, x in enumerate(basis):
        if _sigma_power(algebra, x, algebra.r) != x:
            failures.append((a, -1))
    for a, b in product(range(algebra.dimension), repeat=2):
        x, y = basis[a], basis[b]
        if algebra.sigma(algebra.bracket(x, y)) != algebra.bracket(algebra.sigma(x), algebra.sigma(y)):
            failures.append((a, b))
        elif algebra.form(algebra.sigma(x), algebra.sigma(y)) != algebra.form(x, y):
            failures.append((a, b))
    return failures


def _sigma_power(algebra: SimpleLieAlgebra, x: GElement, power: int) -> GElement:
    for _ in range(power):
        x = algebra.sigma(x)
    return x
