"""Finitely presented commutative algebras over a field.

A presented algebra is k[x_1..x_n]/I with a fixed monomial order and
weights; the reduced Groebner basis of I is cached, and every element of
the quotient gets the canonical normal-form representative.  Algebra
maps carry validity checks, surjectivity witnesses, and kernels via
block elimination on the graph ideal.
"""

from .polynomials import Poly, DegRevLex, BlockElim, exp_divides, poly_str
from .gbcore import (module_gb, vec_from_polys, polys_from_vec,
                     reduce_by_module_gb)


def buchberger(polys, order, field):
    """Reduced Groebner basis of the ideal generated by `polys`."""
    vecs = [vec_from_polys([p]) for p in polys if not p.is_zero()]
    gb = module_gb(vecs, order, field)
    return [polys_from_vec(v, 1, field)[0] for v in gb]


def normal_form(p, gb, order, field):
    v = vec_from_polys([p])
    gbv = [vec_from_polys([g]) for g in gb]
    return polys_from_vec(reduce_by_module_gb(v, gbv, order, field), 1, field)[0]


class PresentedAlgebra:
    """k[vars]/(relations) with a monomial order and variable weights."""

    def __init__(self, varnames, field, relations=(), order=None, weights=None):
        if len(set(varnames)) != len(varnames):
            raise ValueError("duplicate variable names")
        self.varnames = list(varnames)
        self.field = field
        self.order = order or DegRevLex()
        self.weights = list(weights) if weights is not None \
            else [1] * len(varnames)
        if len(self.weights) != len(varnames):
            raise ValueError("one weight per variable")
        self.relations = [p for p in relations if not p.is_zero()]
        self._gb = None

    @property
    def nvars(self):
        return len(self.varnames)

    def gb(self):
        if self._gb is None:
            self._gb = buchberger(self.relations, self.order, self.field)
        return self._gb

    def nf(self, p):
        return normal_form(p, self.gb(), self.order, self.field)

    def is_zero(self, p):
        return self.nf(p).is_zero()

    def var(self, name):
        return Poly.variable(self.varnames.index(name), self.nvars, self.field)

    def constant(self, c):
        return Poly.constant(c, self.nvars, self.field)

    def one(self):
        return self.constant(self.field.one())

    def zero(self):
        return Poly.zero(self.field)

    def from_int(self, n):
        return self.constant(self.field.from_int(n))

    def is_graded(self):
        return all(g.is_homogeneous(self.weights) for g in self.relations)

    def is_trivial(self):
        """Whether the quotient is the zero ring (1 lies in the ideal)."""
        g = self.gb()
        return len(g) == 1 and g[0].is_constant() and not g[0].is_zero()

    def lt_exponents(self):
        """Leading exponents of the reduced Groebner basis of the ideal."""
        return [g.leading(self.order)[0] for g in self.gb()]

    def k_dimension(self):
        """Dimension over k of the quotient, or None if infinite.

        Counts the staircase under the leading-term ideal; finite exactly
        when every variable has a pure power among the leading terms (or
        the ring is trivial).
        """
        return staircase_dimension(self.lt_exponents(), self.nvars)

    def weighted_degree(self, exp):
        return sum(w * e for w, e in zip(self.weights, exp))

    def str_of(self, p):
        return poly_str(self.nf(p), self.varnames, self.order)

    def __repr__(self):
        return (f"PresentedAlgebra({self.field.name}[{', '.join(self.varnames)}]"
                f" / {len(self.relations)} relations)")


def staircase_dimension(lt_exps, nvars):
    """Number of monomials outside the monomial ideal, or None if infinite."""
    if any(all(e == 0 for e in exp) for exp in lt_exps):
        return 0
    if nvars == 0:
        return 1
    bounds = [None] * nvars
    for exp in lt_exps:
        support = [i for i, e in enumerate(exp) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or exp[i] < bounds[i]:
                bounds[i] = exp[i]
    if any(b is None for b in bounds):
        return None
    count = 0
    stack = [(0, (0,) * nvars)]
    while stack:
        i, exp = stack.pop()
        if i == nvars:
            if not any(exp_divides(g, exp) for g in lt_exps):
                count += 1
            continue
        for e in range(bounds[i]):
            stack.append((i + 1, exp[:i] + (e,) + exp[i + 1:]))
    return count


def monomial_ideal_numerator(gens, weights, field=None):
    """Hilbert series numerator of R/(monomial ideal), as {degree: int}.

    The graded free resolution recursion: with m the last generator,
    K(gens) = K(gens') - t^deg(m) * K(gens' : m).
    """
    gens = sorted(set(gens))
    # remove redundant generators
    kept = [g for g in gens
            if not any(h != g and exp_divides(h, g) for h in gens)]
    kept = sorted(set(kept))
    if not kept:
        return {0: 1}
    if any(all(e == 0 for e in g) for g in kept):
        return {}
    m = kept[-1]
    rest = kept[:-1]
    a = monomial_ideal_numerator(rest, weights)
    colon = [tuple(max(g[i] - m[i], 0) for i in range(len(m))) for g in rest]
    b = monomial_ideal_numerator(colon, weights)
    d = sum(w * e for w, e in zip(weights, m))
    out = dict(a)
    for deg, c in b.items():
        out[deg + d] = out.get(deg + d, 0) - c
        if out[deg + d] == 0:
            del out[deg + d]
    return out


class AlgebraMap:
    """Map of presented algebras, given by images of the source variables."""

    def __init__(self, source, target, images, check=True):
        if len(images) != source.nvars:
            raise ValueError("one image per source variable")
        if source.field != target.field:
            raise ValueError("field mismatch")
        self.source = source
        self.target = target
        self.images = [target.nf(p) for p in images]
        if check and not self.is_well_defined():
            raise ValueError("map does not kill the source relations")

    def is_well_defined(self):
        return all(self.target.is_zero(self._apply_raw(g))
                   for g in self.source.relations)

    def _apply_raw(self, p):
        f = self.source.field
        n = self.target.nvars
        out = Poly.zero(f)
        for exp, c in p.coeffs.items():
            term = Poly.constant(c, n, f)
            for i, e in enumerate(exp):
                if e:
                    term = term * (self.images[i] ** e)
            out = out + term
        return out

    def apply(self, p):
        return self.target.nf(self._apply_raw(p))

    def _graph(self):
        """Product presentation k[target vars | source vars] with the graph
        ideal, under an order eliminating the target block."""
        nt = self.target.nvars
        ns = self.source.nvars
        n = nt + ns
        f = self.source.field

        def lift_target(p):
            return Poly({exp + (0,) * ns: c for exp, c in p.coeffs.items()}, f)

        gens = [lift_target(g) for g in self.target.relations]
        for i in range(ns):
            xi = Poly.variable(nt + i, n, f)
            gens.append(xi - lift_target(self.images[i]))
        names = ([f"{v}'" for v in self.target.varnames]
                 + list(self.source.varnames))
        ring = PresentedAlgebra(names, f, gens, order=BlockElim(nt))
        return ring, nt, ns

    def kernel_generators(self):
        """Generators of the kernel, as a reduced Groebner basis in the
        source polynomial ring (normal forms mod the source ideal)."""
        ring, nt, ns = self._graph()
        f = self.source.field
        kept = []
        for g in ring.gb():
            if all(all(e == 0 for e in exp[:nt]) for exp in g.coeffs):
                kept.append(Poly({exp[nt:]: c for exp, c in g.coeffs.items()},
                                 f))
        out = []
        for p in kept:
            q = self.source.nf(p)
            if not q.is_zero():
                out.append(q)
        return buchberger(out + list(self.source.relations),
                          self.source.order, f)

    def surjectivity_witness(self):
        """Preimages of the target variables, or None if not surjective.

        Uses the graph ideal: the normal form of a target variable under
        the elimination order lies in the source block iff it has a
        preimage.
        """
        ring, nt, ns = self._graph()
        f = self.source.field
        out = []
        for j in range(nt):
            tj = Poly.variable(j, nt + ns, f)
            q = ring.nf(tj)
            if any(any(e != 0 for e in exp[:nt]) for exp in q.coeffs):
                return None
            out.append(Poly({exp[nt:]: c for exp, c in q.coeffs.items()}, f))
        return out

    def is_surjective(self):
        return self.surjectivity_witness() is not None


def compose(g, f):
    """g after f."""
    if f.target is not g.source and f.target.varnames != g.source.varnames:
        raise ValueError("composition mismatch")
    return AlgebraMap(f.source, g.target,
                      [g._apply_raw(p) for p in f.images], check=False)
