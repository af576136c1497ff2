"""Permutations on {1..n} and closure-based enumeration of permutation groups.

Products act left to right: ``compose(a, b)`` applies ``a`` first, then ``b``.
Conjugation is ``g^x = x^-1 g x``.  Points are 1-based in every textual form;
internally an element is a tuple of 0-based images, which is what the hot
loops of the other modules work with.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from ._nt import prime_factors

DEFAULT_CAP = 500_000

Images = tuple[int, ...]


class PermutationError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Enumeration would exceed the configured element cap."""

    def __init__(self, cap: int, order: int | None = None):
        self.cap = cap
        self.order = order
        msg = f"group has more than {cap} elements"
        if order is not None:
            msg = f"group order {order} exceeds cap {cap}"
        super().__init__(msg)


# -- raw tuple kernels ------------------------------------------------------

def _compose(a: Images, b: Images) -> Images:
    return tuple([b[i] for i in a])


def _inverse(a: Images) -> Images:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _conjugate(g: Images, x: Images) -> Images:
    # x^-1 g x sends x[i] to x[g[i]]
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[x[i]] = x[gi]
    return tuple(out)


def _cycles(a: Images) -> list[list[int]]:
    seen = [False] * len(a)
    cycles = []
    for start in range(len(a)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = a[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        cycles.append(cyc)
    return cycles


def _order(a: Images) -> int:
    return reduce(math.lcm, (len(c) for c in _cycles(a)), 1)


# -- public permutation type ------------------------------------------------

class Permutation:
    """A bijection of {1..n}; immutable and hashable."""

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int]):
        img = tuple(int(i) - 1 for i in images)
        if sorted(img) != list(range(len(img))):
            raise PermutationError(f"not a permutation: {[i + 1 for i in img]}")
        self._img = img

    @classmethod
    def _raw(cls, img: Images) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @property
    def images(self) -> tuple[int, ...]:
        """1-based images: ``images[i - 1]`` is the image of point ``i``."""
        return tuple(i + 1 for i in self._img)

    @property
    def degree(self) -> int:
        return len(self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def order(self) -> int:
        return _order(self._img)

    def cycle_string(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    __str__ = cycle_string


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise PermutationError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    _check_degrees(a, b)
    return Permutation._raw(_compose(a._img, b._img))


def inverse(a: Permutation) -> Permutation:
    return Permutation._raw(_inverse(a._img))


def conjugate(g: Permutation, x: Permutation) -> Permutation:
    """``x^-1 g x``."""
    _check_degrees(g, x)
    return Permutation._raw(_conjugate(g._img, x._img))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1,2,3)(4,5)"``.

    Points omitted from the text are fixed; ``"()"`` is the identity.
    """
    if degree < 1:
        raise PermutationError("degree must be positive")
    s = "".join(text.split())
    if not s:
        raise PermutationError("empty cycle string")
    pos = 0
    img = list(range(degree))
    seen: set[int] = set()
    while pos < len(s):
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise PermutationError(f"malformed cycle notation at offset {pos}: {text!r}")
        pos = m.end()
        body = m.group(1)
        if not body:
            continue
        try:
            pts = [int(t) for t in body.split(",")]
        except ValueError:
            raise PermutationError(f"malformed cycle {m.group(0)!r}") from None
        for pt in pts:
            if not 1 <= pt <= degree:
                raise PermutationError(f"point {pt} out of range 1..{degree}")
            if pt in seen:
                raise PermutationError(f"point {pt} repeated")
            seen.add(pt)
        for x, y in zip(pts, pts[1:] + pts[:1]):
            img[x - 1] = y - 1
    return Permutation._raw(tuple(img))


def format_cycles(p: Permutation) -> str:
    """Canonical cycle string: each cycle starts at its least point, 1-cycles dropped."""
    cyc = [c for c in _cycles(p._img) if len(c) > 1]
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)


def cycle(*points: int, degree: int) -> Permutation:
    img = list(range(degree))
    for x, y in zip(points, points[1:] + points[:1]):
        img[x - 1] = y - 1
    return Permutation._raw(tuple(img))


# -- finite fields for the linear-group actions -----------------------------

def _factor_prime_power(q: int) -> tuple[int, int]:
    ps = prime_factors(q) if q > 1 else []
    if len(ps) != 1:
        raise PermutationError(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coefficient lists (low degree first) reduced modulo monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    prod = (prod + [0] * k)[:k]
    return prod


def _primitive_modulus(p: int, k: int) -> list[int]:
    """Least monic degree-k polynomial over F_p whose root x generates F_{p^k}^*."""
    order = p**k - 1
    one = [1] + [0] * (k - 1)

    def power_of_x(mod, e):
        result, base = one, [0, 1] + [0] * (k - 2)
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, mod, p)
            base = _poly_mulmod(base, base, mod, p)
            e >>= 1
        return result

    for code in range(p**k):
        mod = [(code // p**i) % p for i in range(k)] + [1]
        if mod[0] == 0:
            continue
        if power_of_x(mod, order) == one and all(power_of_x(mod, order // r) != one for r in prime_factors(order)):
            return mod
    raise AssertionError("no primitive polynomial found")


@dataclass(frozen=True)
class GF:
    """Arithmetic in F_q; elements are integers 0..q-1 read as base-p digit vectors."""

    q: int
    p: int = field(init=False)
    k: int = field(init=False)
    mul_table: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    add_table: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    primitive: int = field(init=False)

    def __post_init__(self):
        p, k = _factor_prime_power(self.q)
        q = self.q

        def digits(x):
            return [(x // p**i) % p for i in range(k)]

        def encode(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        add = tuple(tuple(encode([(u + v) % p for u, v in zip(digits(x), digits(y))]) for y in range(q)) for x in range(q))
        if k == 1:
            mul = tuple(tuple((x * y) % p for y in range(q)) for x in range(q))
            prim = next(g for g in range(1, q) if all(pow(g, (q - 1) // r, q) != 1 for r in prime_factors(q - 1)))
        else:
            mod = _primitive_modulus(p, k)
            mul = tuple(tuple(encode(_poly_mulmod(digits(x), digits(y), mod, p)) for y in range(q)) for x in range(q))
            prim = p  # encodes the polynomial x
        for name, val in (("p", p), ("k", k), ("add_table", add), ("mul_table", mul), ("primitive", prim)):
            object.__setattr__(self, name, val)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]


def _matrix_action(mats: Sequence[Sequence[Sequence[int]]], n: int, F: GF) -> list[Images]:
    """Permutations induced by ``v -> v M`` on nonzero row vectors in radix order."""
    q = F.q
    vecs = []
    for code in range(1, q**n):
        vecs.append(tuple((code // q ** (n - 1 - i)) % q for i in range(n)))
    index = {v: i for i, v in enumerate(vecs)}
    perms = []
    for M in mats:
        img = []
        for v in vecs:
            w = []
            for j in range(n):
                acc = 0
                for i in range(n):
                    acc = F.add(acc, F.mul(v[i], M[i][j]))
                w.append(acc)
            img.append(index[tuple(w)])
        perms.append(tuple(img))
    return perms


def _linear_generators(n: int, q: int, special: bool) -> list[Images]:
    F = GF(q)
    mats = []
    basis = [1]
    for _ in range(F.k - 1):
        basis.append(F.mul(basis[-1], F.primitive))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in basis:
                M = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
                M[i][j] = c
                mats.append(M)
    if not special and q > 2:
        D = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
        D[0][0] = F.primitive
        mats.append(D)
    return _matrix_action(mats, n, F)


# -- group specifications ---------------------------------------------------

FAMILIES = ("symmetric", "alternating", "cyclic", "dihedral", "gl", "sl")


@dataclass(frozen=True)
class GroupSpec:
    """A permutation group given by generators or by a named family.

    ``family`` is one of FAMILIES with integer ``params``; ``dihedral(m)`` is
    the order-2m symmetry group of an m-gon acting on its m vertices.
    """

    id: str
    generators: tuple[Permutation, ...] = ()
    family: str | None = None
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family is None:
            if not self.generators:
                raise PermutationError("a group needs generators or a family")
            degs = {g.degree for g in self.generators}
            if len(degs) != 1:
                raise PermutationError(f"generators of mixed degree {sorted(degs)}")
        else:
            _check_family(self.family, self.params)

    @classmethod
    def named(cls, family: str, *params: int, id: str | None = None) -> "GroupSpec":
        params = tuple(int(x) for x in params)
        label = id or f"{family}({','.join(map(str, params))})"
        return cls(id=label, family=family, params=params)

    @classmethod
    def from_cycles(cls, id: str, cycles: Sequence[str], degree: int | None = None) -> "GroupSpec":
        if not cycles:
            raise PermutationError("empty generator list")
        if degree is None:
            pts = [int(t) for c in cycles for t in re.findall(r"\d+", c)]
            degree = max(pts, default=1)
        return cls(id=id, generators=tuple(parse_cycles(c, degree) for c in cycles))

    @property
    def degree(self) -> int:
        return self.expand()[0].degree

    def expand(self) -> tuple[Permutation, ...]:
        """The fixed generator list (family generators are deterministic)."""
        if self.family is None:
            return self.generators
        return tuple(Permutation._raw(g) for g in family_generators(self.family, self.params))


def _check_family(family: str, params: tuple[int, ...]) -> None:
    arity = {"symmetric": 1, "alternating": 1, "cyclic": 1, "dihedral": 1, "gl": 2, "sl": 2}
    if family not in arity:
        raise PermutationError(f"unknown family {family!r}")
    if len(params) != arity[family]:
        raise PermutationError(f"{family} takes {arity[family]} parameter(s)")
    if any(x < 1 for x in params):
        raise PermutationError(f"{family} parameters must be positive")
    if family == "dihedral" and params[0] < 3:
        raise PermutationError("dihedral(m) needs m >= 3 to act faithfully on m points")
    if family in ("gl", "sl"):
        _factor_prime_power(params[1])


def family_generators(family: str, params: tuple[int, ...]) -> list[Images]:
    _check_family(family, params)
    if family in ("gl", "sl"):
        return _linear_generators(params[0], params[1], family == "sl")
    n = params[0]
    ident = tuple(range(n))

    def cyc(pts):
        img = list(range(n))
        for x, y in zip(pts, pts[1:] + pts[:1]):
            img[x] = y
        return tuple(img)

    if family == "symmetric":
        if n == 1:
            return [ident]
        return [cyc([0, 1]), cyc(list(range(n)))]
    if family == "alternating":
        if n < 3:
            return [ident]
        long = cyc(list(range(n))) if n % 2 else cyc(list(range(1, n)))
        return [cyc([0, 1, 2]), long]
    if family == "cyclic":
        return [cyc(list(range(n)))]
    # dihedral
    return [cyc(list(range(n))), tuple(n - 1 - i for i in range(n))]


def family_order(family: str, params: tuple[int, ...]) -> int:
    _check_family(family, params)
    if family == "symmetric":
        return math.factorial(params[0])
    if family == "alternating":
        n = params[0]
        return 1 if n < 2 else math.factorial(n) // 2
    if family == "cyclic":
        return params[0]
    if family == "dihedral":
        return 2 * params[0]
    n, q = params
    gl = 1
    for i in range(n):
        gl *= q**n - q**i
    return gl if family == "gl" else gl // (q - 1)


# -- enumeration ------------------------------------------------------------

class ElementTable:
    """All elements of a permutation group, in breadth-first closure order.

    ``perms[i]`` is the raw 0-based image tuple of element ``i`` and
    ``index`` maps raw tuples back to positions.  Element 0 is the identity.
    """

    def __init__(self, perms: list[Images], generators: Sequence[Images]):
        self.perms = perms
        self.index = {g: i for i, g in enumerate(perms)}
        self.generators = tuple(generators)
        self._inv: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def degree(self) -> int:
        return len(self.perms[0])

    def __len__(self) -> int:
        return len(self.perms)

    def element(self, i: int) -> Permutation:
        return Permutation._raw(self.perms[i])

    @property
    def elements(self) -> list[Permutation]:
        return [Permutation._raw(g) for g in self.perms]

    def generator_indices(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    def inverse_index(self) -> list[int]:
        if self._inv is None:
            idx = self.index
            self._inv = [idx[_inverse(g)] for g in self.perms]
        return self._inv

    def mul(self, i: int, j: int) -> int:
        return self.index[_compose(self.perms[i], self.perms[j])]

    def exponent(self) -> int:
        return reduce(math.lcm, (_order(g) for g in self.perms), 1)


def closure(gens: Sequence[Images], degree: int, cap: int = DEFAULT_CAP) -> list[Images]:
    """Breadth-first closure from the identity under right multiplication by ``gens``."""
    ident = tuple(range(degree))
    gens = [g for g in gens if g != ident]
    seen = {ident}
    out = [ident]
    queue = deque(out)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple([g[i] for i in x])
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > cap:
                    raise CapExceeded(cap)
                queue.append(y)
    return out


def generate_elements(spec: GroupSpec, cap: int = DEFAULT_CAP) -> ElementTable:
    if spec.family is not None:
        n = family_order(spec.family, spec.params)
        if n > cap:
            raise CapExceeded(cap, n)
        gens = family_generators(spec.family, spec.params)
    else:
        gens = [g._img for g in spec.generators]
    degree = len(gens[0])
    return ElementTable(closure(gens, degree, cap), gens)


def group_order(spec: GroupSpec, cap: int = DEFAULT_CAP) -> int:
    if spec.family is not None:
        return family_order(spec.family, spec.params)
    return generate_elements(spec, cap).order
