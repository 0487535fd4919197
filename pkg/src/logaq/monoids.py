"""Finitely presented commutative monoids, prelog rings, and morphisms.

A monoid is given by generators and relations x^u = x^v between words in
the generators.  Word problems go through the monoid algebra (the ideal
of pure binomial differences), group completion through the abelian
group layer.

A prelog ring is an algebra together with a monoid and images of the
monoid generators; a morphism is a compatible pair of an algebra map and
a monoid map.  choose_log_factorization splits a morphism through an
intermediate prelog ring whose monoid is free over the source and whose
algebra is polynomial over the source, surjecting onto the target.
"""

from dataclasses import dataclass, field as dc_field

from .intlinalg import IntMatrix
from .abgroups import FpAbGroup, AbHom
from .polynomials import Poly
from .groebner import PresentedAlgebra, AlgebraMap


class FpMonoid:
    """Commutative monoid on n generators with relations word = word."""

    def __init__(self, gen_names, relations=()):
        if len(set(gen_names)) != len(gen_names):
            raise ValueError("duplicate generator names")
        self.gen_names = list(gen_names)
        self.relations = [(tuple(u), tuple(v)) for u, v in relations]
        for u, v in self.relations:
            if len(u) != self.n_gens or len(v) != self.n_gens:
                raise ValueError("relation word length mismatch")
            if any(e < 0 for e in u + v):
                raise ValueError("monoid words need nonnegative exponents")
        self._word_algebra = None

    @property
    def n_gens(self):
        return len(self.gen_names)

    @classmethod
    def free(cls, gen_names):
        return cls(gen_names)

    def _algebra(self):
        # internal word-problem oracle; the field is irrelevant because
        # the ideal is generated by differences of monomials
        if self._word_algebra is None:
            from .fields import QQ
            n = self.n_gens
            rels = []
            for u, v in self.relations:
                rels.append(Poly.monomial(u, QQ.one(), QQ)
                            - Poly.monomial(v, QQ.one(), QQ))
            self._word_algebra = PresentedAlgebra(
                [f"m{i}" for i in range(n)], QQ, rels)
        return self._word_algebra

    def words_equal(self, u, v):
        from .fields import QQ
        alg = self._algebra()
        pu = Poly.monomial(tuple(u), QQ.one(), QQ)
        pv = Poly.monomial(tuple(v), QQ.one(), QQ)
        return alg.nf(pu - pv).is_zero()

    def group_completion(self):
        cols = [[a - b for a, b in zip(u, v)] for u, v in self.relations]
        return FpAbGroup(self.n_gens,
                         IntMatrix.from_columns(cols, self.n_gens))

    def free_adjunction(self, new_names):
        """M + free monoid on new_names, relations padded with zeros."""
        names = self.gen_names + list(new_names)
        k = len(new_names)
        rels = [(u + (0,) * k, v + (0,) * k) for u, v in self.relations]
        return FpMonoid(names, rels)

    def monoid_algebra(self, field, varnames=None, order=None, weights=None):
        names = varnames or self.gen_names
        rels = []
        for u, v in self.relations:
            rels.append(Poly.monomial(u, field.one(), field)
                        - Poly.monomial(v, field.one(), field))
        return PresentedAlgebra(names, field, rels, order=order,
                                weights=weights)

    def __repr__(self):
        return f"FpMonoid({self.gen_names}, {len(self.relations)} relations)"


class MonoidHom:
    """Monoid map given by images (exponent words) of the generators."""

    def __init__(self, source, target, images, check=True):
        if len(images) != source.n_gens:
            raise ValueError("one image word per source generator")
        self.source = source
        self.target = target
        self.images = [tuple(w) for w in images]
        for w in self.images:
            if len(w) != target.n_gens or any(e < 0 for e in w):
                raise ValueError("bad image word")
        if check and not self.is_well_defined():
            raise ValueError("map does not respect the monoid relations")

    def apply(self, word):
        out = [0] * self.target.n_gens
        for e, img in zip(word, self.images):
            if e:
                for i, x in enumerate(img):
                    out[i] += e * x
        return tuple(out)

    def is_well_defined(self):
        return all(self.target.words_equal(self.apply(u), self.apply(v))
                   for u, v in self.source.relations)

    def gp(self):
        """Induced map of group completions."""
        mat = IntMatrix.from_columns([list(w) for w in self.images],
                                     self.target.n_gens)
        if not self.images:
            mat = IntMatrix.zero(self.target.n_gens, 0)
        return AbHom(self.source.group_completion(),
                     self.target.group_completion(), mat, check=False)

    def is_strict(self):
        """Whether the induced map of group completions is an isomorphism."""
        return self.gp().is_isomorphism()


class PrelogRing:
    """(algebra, monoid, structure images of the monoid generators)."""

    def __init__(self, algebra, monoid, alpha, check=True):
        if len(alpha) != monoid.n_gens:
            raise ValueError("one structure image per monoid generator")
        self.algebra = algebra
        self.monoid = monoid
        self.alpha = [algebra.nf(p) for p in alpha]
        if check and not self.is_well_defined():
            raise ValueError("structure map does not respect monoid relations")

    def alpha_of(self, word):
        out = self.algebra.one()
        for e, img in zip(word, self.alpha):
            if e:
                out = out * (img ** e)
        return self.algebra.nf(out)

    def is_well_defined(self):
        return all(self.algebra.is_zero(self.alpha_of(u) - self.alpha_of(v))
                   for u, v in self.monoid.relations)


class PrelogMorphism:
    """(A, M) -> (B, N): an algebra map and a monoid map that commute
    with the structure maps."""

    def __init__(self, source, target, ring_map, monoid_map, check=True):
        self.source = source
        self.target = target
        self.ring_map = ring_map
        self.monoid_map = monoid_map
        if check and not self.is_well_defined():
            raise ValueError("ring and monoid maps do not commute with alpha")

    def is_well_defined(self):
        for i in range(self.source.monoid.n_gens):
            word = tuple(1 if j == i else 0
                         for j in range(self.source.monoid.n_gens))
            lhs = self.ring_map.apply(self.source.alpha[i])
            rhs = self.target.alpha_of(self.monoid_map.apply(word))
            if not self.target.algebra.is_zero(lhs - rhs):
                return False
        return True

    def is_strict(self):
        return self.monoid_map.is_strict()


@dataclass
class FactorizationOptions:
    """Knobs for alternative intermediate choices, for stability checks."""

    extra_x: bool = False       # add a redundant cover of the first N gen
    reverse_x: bool = False     # reverse the order of the new monoid gens
    front_raw: bool = False     # downstream: use raw ideal generators


@dataclass
class Factorization:
    """(A, M) -> (R, P0) -> (B, N) with both second maps surjective."""

    morphism: "PrelogMorphism"
    mid: "PrelogRing"                 # (R, P0)
    left: "PrelogMorphism"            # (A, M) -> (R, P0)
    right: "PrelogMorphism"           # (R, P0) -> (B, N)
    x_names: list = dc_field(default_factory=list)
    x_words: list = dc_field(default_factory=list)  # image word in N per x


def choose_log_factorization(morphism, options=None):
    """Factor (A, M) -> (B, N) through a free-over-the-source middle.

    P0 = M + free monoid on covers of the N generators, mapping onto N;
    R = A[one variable per new monoid generator, one per B variable],
    mapping onto B.  Deterministic given the options.
    """
    options = options or FactorizationOptions()
    src, tgt = morphism.source, morphism.target
    a_alg, b_alg = src.algebra, tgt.algebra
    m, n = src.monoid, tgt.monoid
    f = a_alg.field

    covers = list(range(n.n_gens))
    if options.extra_x and n.n_gens:
        covers = covers + [0]
    if options.reverse_x:
        covers = list(reversed(covers))
    x_names = []
    used = set(n.gen_names)
    for k, gi in enumerate(covers):
        name = f"x@{n.gen_names[gi]}" if covers.count(gi) == 1 \
            else f"x@{n.gen_names[gi]}#{k}"
        x_names.append(name)
        used.add(name)
    x_words = [tuple(1 if j == gi else 0 for j in range(n.n_gens))
               for gi in covers]

    p0 = m.free_adjunction(x_names)
    # h: P0 -> N, the morphism's monoid map on M, the covers on X
    h = MonoidHom(p0, n,
                  [morphism.monoid_map.images[i] for i in range(m.n_gens)]
                  + x_words, check=False)

    r_names = list(a_alg.varnames) + x_names + [f"y@{v}"
                                                for v in b_alg.varnames]
    nr = len(r_names)
    n_a = a_alg.nvars

    def lift_a(p):
        return Poly({exp + (0,) * (nr - n_a): c
                     for exp, c in p.coeffs.items()}, f)

    r_alg = PresentedAlgebra(r_names, f, [lift_a(g) for g in a_alg.relations])
    # structure map of (R, P0): alpha_A on M, the new variables on X
    r_alpha = ([lift_a(p) for p in src.alpha]
               + [r_alg.var(nm) for nm in x_names])
    mid = PrelogRing(r_alg, p0, r_alpha, check=False)

    left = PrelogMorphism(
        src, mid,
        AlgebraMap(a_alg, r_alg, [r_alg.var(v) for v in a_alg.varnames],
                   check=False),
        MonoidHom(m, p0,
                  [tuple(1 if j == i else 0 for j in range(p0.n_gens))
                   for i in range(m.n_gens)], check=False),
        check=False)

    # R -> B: A variables via the ring map, x@ to alpha_B of the cover,
    # y@ to the B variable itself
    images = ([morphism.ring_map.images[i] for i in range(n_a)]
              + [tgt.alpha_of(w) for w in x_words]
              + [b_alg.var(v) for v in b_alg.varnames])
    right = PrelogMorphism(
        mid, tgt,
        AlgebraMap(r_alg, b_alg, images, check=False),
        h, check=False)

    return Factorization(morphism, mid, left, right, x_names, x_words)
