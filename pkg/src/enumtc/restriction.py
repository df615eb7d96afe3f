"""Restriction of Chern-class generators to diagonal abelian subgroups.

A subgroup of PU_n generated by commuting diagonal matrices of prime
order q is recorded as exact root-of-unity diagonals.  Each diagonal
slot j carries a character of the subgroup, read off from the entry
exponents; on degree-2 classes the restriction sends tau_j to the
corresponding linear form xi in the q odd case and to the square of a
degree-1 linear form when q = 2.  Composing c_i -> sigma_i(tau) with
that specialization, mod p, produces the restricted images of the
polynomial generators in degree order.

Only the q = p branch is implemented; non-diagonal or higher prime
power subgroups are out of scope.  Diagonal generators commute by
construction, so commutativity is structural rather than checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentEvidence, InvalidField, InvalidInput
from .fields import PrimeField, QQ, cyclotomic_field, field_from_tag, is_prime
from .nabla import stated_image_generators
from .poly import (
    Polynomial,
    SpecializationMap,
    elementary_symmetric,
    make_table,
    polynomial_from_json,
    polynomial_to_json,
    substitute,
)


def tau_table(n: int):
    """Degree-2 diagonal classes tau_1..tau_n."""
    return make_table(tuple(f"tau{j}" for j in range(1, n + 1)), (2,) * n)


def chern_to_tau_map(n: int, p: int) -> SpecializationMap:
    """c_i -> i-th elementary symmetric polynomial in tau_1..tau_n, mod p."""
    Fp = PrimeField(p)
    tau = tau_table(n)
    images = {f"c{i}": elementary_symmetric(i, tau, Fp)
              for i in range(1, n + 1)}
    return SpecializationMap(images, check_grading=True,
                             name="chern-to-diagonal")


def _canonical_root(field, q: int):
    """The fixed primitive q-th root all entries are compared against."""
    if q == 2:
        return field.from_int(-1)
    root = field.gen()
    if root ** q != field.one() or root == field.one():
        raise InvalidField(f"field generator is not a primitive {q}-th root")
    return root


def _entry_exponent(entry, root, q: int, field, where: str) -> int:
    power = field.one()
    for e in range(q):
        if entry == power:
            return e
        power = power * root
    raise InvalidInput(f"{where}: entry is not a power of the canonical root")


def exponent_grid(generators, q: int, field):
    """grid[i][j] = e with generator i acting on slot j by root**e."""
    root = _canonical_root(field, q)
    grid = []
    for i, diag in enumerate(generators):
        row = [_entry_exponent(entry, root, q, field,
                               f"generator {i + 1}, slot {j + 1}")
               for j, entry in enumerate(diag)]
        grid.append(row)
    return grid


def _slot_marker(q: int, i: int, width: int):
    # Exponent tuple of the monomial generator i contributes to a tau image:
    # xi_i for q odd, u_i^2 for q = 2 (squaring is additive in char 2).
    e = [0] * width
    e[i] = 2 if q == 2 else 1
    return tuple(e)


def _tau_images(grid, n: int, q: int, p: int, target) -> dict:
    Fp = PrimeField(p)
    images = {}
    for j in range(n):
        acc = Polynomial.zero(target, Fp)
        for i, row in enumerate(grid):
            if row[j] % p == 0:
                continue
            e = [0] * len(target)
            e[i] = 1
            acc = acc + Polynomial.monomial(tuple(e), Fp.from_int(row[j]),
                                            target, Fp)
        if q == 2:
            acc = acc * acc
        images[f"tau{j + 1}"] = acc
    return images


@dataclass(frozen=True)
class SubgroupDatum:
    """Diagonal elementary abelian subgroup with its stored tau images.

    generators holds one diagonal tuple per generator; entries are exact
    field elements of multiplicative order dividing q.  tau_map is data,
    not derived here: verify_specialization_from_generators recomputes
    the images from the entry exponents and confirms agreement.
    """

    n: int
    p: int
    q: int
    field: object
    generators: tuple
    tau_map: SpecializationMap
    exterior_count: int
    name: str = ""

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput("ambient rank must be at least 2")
        if not is_prime(self.p):
            raise InvalidInput(f"p={self.p} is not prime")
        if self.q != self.p:
            raise InvalidInput("only the q = p branch is supported")
        if self.exterior_count < 0:
            raise InvalidInput("exterior_count must be nonnegative")
        one = self.field.one()
        for i, diag in enumerate(self.generators):
            if len(diag) != self.n:
                raise InvalidInput(f"generator {i + 1} is not {self.n}x{self.n}")
            if all(entry == one for entry in diag):
                raise InvalidInput(f"generator {i + 1} is the identity")
            for j, entry in enumerate(diag):
                if entry ** self.q != one:
                    raise InvalidInput(
                        f"generator {i + 1}, slot {j + 1}: "
                        f"entry order does not divide {self.q}")
        expected_names = {f"tau{j}" for j in range(1, self.n + 1)}
        if set(self.tau_map.images) != expected_names:
            raise InvalidInput("tau_map must cover exactly tau_1..tau_n")


def make_subgroup_datum(n, p, q, field, generators, target_names=None,
                        exterior_count=0, name="") -> SubgroupDatum:
    """Build a datum with the tau images derived from the generators."""
    generators = tuple(tuple(d) for d in generators)
    r = len(generators)
    if target_names is None:
        stem = "u" if q == 2 else "xi"
        target_names = tuple(f"{stem}{i}" for i in range(1, r + 1))
    if len(target_names) != r:
        raise InvalidInput("one target variable per generator")
    weight = 1 if q == 2 else 2
    target = make_table(tuple(target_names), (weight,) * r)
    grid = exponent_grid(generators, q, field)
    images = _tau_images(grid, n, q, p, target)
    tau_map = SpecializationMap(images, check_grading=True, name=name)
    return SubgroupDatum(n, p, q, field, generators, tau_map,
                         exterior_count, name)


def k_datum() -> SubgroupDatum:
    """(Z/3)^3 of diagonal cube roots of unity in PU_4; p = 3, m = 3."""
    F = cyclotomic_field(3)
    z, one = F.gen(), F.one()
    gens = ((z, one, one, one),
            (one, z, one, one),
            (one, one, z, one))
    F3 = PrimeField(3)
    target = make_table(("xi1", "xi2", "xi3"), (2, 2, 2))
    images = {
        "tau1": Polynomial.variable("xi1", target, F3),
        "tau2": Polynomial.variable("xi2", target, F3),
        "tau3": Polynomial.variable("xi3", target, F3),
        "tau4": Polynomial.zero(target, F3),
    }
    tau_map = SpecializationMap(images, check_grading=True, name="K")
    return SubgroupDatum(4, 3, 3, F, gens, tau_map, 3, "K")


def h_datum() -> SubgroupDatum:
    """(Z/2)^2 of diagonal signs in PU_3; p = 2, no exterior factor."""
    one = Fraction(1)
    gens = ((-one, one, one),
            (one, -one, one))
    F2 = PrimeField(2)
    target = make_table(("u", "v"))
    u = Polynomial.variable("u", target, F2)
    v = Polynomial.variable("v", target, F2)
    images = {
        "tau1": u * u,
        "tau2": v * v,
        "tau3": Polynomial.zero(target, F2),
    }
    tau_map = SpecializationMap(images, check_grading=True, name="H")
    return SubgroupDatum(3, 2, 2, QQ, gens, tau_map, 0, "H")


def phi_star_generators(datum: SubgroupDatum):
    """Restricted generator images over F_p, in increasing degree.

    Composite: generator in c_1..c_n -> sigma_i(tau) -> stored tau
    specialization, everything reduced mod p throughout (the maps are
    defined over the integers, so early reduction is harmless).
    """
    if datum.n % datum.p == 0:
        raise InvalidInput(f"p={datum.p} divides n={datum.n}")
    Fp = PrimeField(datum.p)
    _, gens = stated_image_generators(datum.n, Fp)
    c_to_sigma = chern_to_tau_map(datum.n, datum.p)
    out = []
    for g in gens:
        in_tau = substitute(g, c_to_sigma)
        out.append(substitute(in_tau, datum.tau_map))
    return out


def verify_specialization_from_generators(datum: SubgroupDatum) -> bool:
    """Recompute tau images from the diagonals and compare with the stored map.

    A mismatch raises InconsistentEvidence naming the first generator
    whose exponent disagrees (or the tau with spurious terms).
    """
    sample = next(iter(datum.tau_map.images.values()))
    target = sample.table
    grid = exponent_grid(datum.generators, datum.q, datum.field)
    if grid and len(target) != len(grid):
        raise InvalidInput("target table size differs from generator count")
    expected = _tau_images(grid, datum.n, datum.q, datum.p, target)
    Fp = PrimeField(datum.p)
    for j in range(1, datum.n + 1):
        name = f"tau{j}"
        stored = datum.tau_map.images[name]
        want = expected[name]
        if stored == want:
            continue
        for i, row in enumerate(grid):
            marker = _slot_marker(datum.q, i, len(target))
            got = stored.terms.get(marker, Fp.zero())
            if got != Fp.from_int(row[j - 1]):
                raise InconsistentEvidence(
                    f"image of {name} disagrees with generator {i + 1}: "
                    f"expected exponent {row[j - 1]} mod {datum.p}")
        raise InconsistentEvidence(
            f"image of {name} has terms not induced by any generator")
    return True


# ----- JSON -----

def subgroup_datum_to_json(datum: SubgroupDatum) -> dict:
    zero = datum.field.element_to_str(datum.field.zero())
    grids = []
    for diag in datum.generators:
        grid = [[datum.field.element_to_str(diag[i]) if i == j else zero
                 for j in range(datum.n)] for i in range(datum.n)]
        grids.append(grid)
    return {
        "n": datum.n,
        "p": datum.p,
        "q": datum.q,
        "exterior_count": datum.exterior_count,
        "name": datum.name,
        "field": datum.field.tag,
        "generators": grids,
        "tau_images": {name: polynomial_to_json(img)
                       for name, img in sorted(datum.tau_map.images.items())},
    }


def subgroup_datum_from_json(data: dict) -> SubgroupDatum:
    field = field_from_tag(data["field"])
    n = data["n"]
    zero = field.zero()
    diags = []
    for g, grid in enumerate(data["generators"]):
        if len(grid) != n or any(len(row) != n for row in grid):
            raise InvalidInput(f"generator {g + 1} grid is not {n}x{n}")
        diag = []
        for i in range(n):
            for j in range(n):
                entry = field.element_from_str(grid[i][j])
                if i == j:
                    diag.append(entry)
                elif entry != zero:
                    raise InvalidInput(
                        f"generator {g + 1} has an off-diagonal entry")
        diags.append(tuple(diag))
    images = {name: polynomial_from_json(img)
              for name, img in data["tau_images"].items()}
    tau_map = SpecializationMap(images, check_grading=True,
                                name=data.get("name", ""))
    return SubgroupDatum(n, data["p"], data["q"], field, tuple(diags),
                         tau_map, data["exterior_count"],
                         data.get("name", ""))
