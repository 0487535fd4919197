"""Invariants of surjective prelog morphisms.

For (C, Q) -> (B, N) with both C -> B and Q -> N surjective, this
module computes Tor_n^C(B, B) from an iterated-syzygy free resolution,
the two monoid correction terms built from ker(Q^gp -> N^gp), and the
conormal module

    coker( B (x) b/b^2  -->  a/a^2 (+) ker(Q^gp -> N^gp) (x) B )

with a = ker(C -> B) and b = ker(k[Q] -> k[N]).  The edge-consistency
check compares the conormal module against H1 of the log complex of the
same morphism.
"""

from .intlinalg import IntMatrix, int_solve, NO_SOLUTION
from .groebner import AlgebraMap
from .modules import FpModule, ModHom, HomologyReport, homology_at
from .aqclassic import kernel_ideal_gens
from .kcomplex import group_module
from .logls import log_homology, _binomial_words, _monomial


class LogSurjection:
    """A prelog morphism with surjective ring and monoid maps, plus the
    kernel data the section-two formulas consume."""

    def __init__(self, morphism):
        self.morphism = morphism
        self.c_alg = morphism.source.algebra
        self.b_alg = morphism.target.algebra
        field = self.b_alg.field
        q = morphism.source.monoid
        n = morphism.target.monoid
        self.q_alg = q.monoid_algebra(field)
        self.n_alg = n.monoid_algebra(field)
        h = morphism.monoid_map
        self.h_alg = AlgebraMap(
            self.q_alg, self.n_alg,
            [self.n_alg.nf(_monomial(self.n_alg, h.apply(
                tuple(1 if j == i else 0 for j in range(q.n_gens)))))
             for i in range(q.n_gens)], check=False)
        if not morphism.ring_map.is_surjective():
            raise ValueError("ring map is not surjective")
        if not self.h_alg.is_surjective():
            raise ValueError("monoid map is not surjective")
        self.a_gens = kernel_ideal_gens(morphism.ring_map)
        self.b_gens = kernel_ideal_gens(self.h_alg)
        self.kergp_inc, self.kergp = h.gp().kernel()
        # alpha_C as a map k[Q] -> C, and alpha_B after h as k[Q] -> B
        self.q_to_c = AlgebraMap(self.q_alg, self.c_alg,
                                 morphism.source.alpha, check=False)
        self.q_to_b = AlgebraMap(
            self.q_alg, self.b_alg,
            [morphism.target.alpha_of(h.apply(
                tuple(1 if j == i else 0 for j in range(q.n_gens))))
             for i in range(q.n_gens)], check=False)


def tor_over_c(s, n):
    """HomologyReports of Tor_i^C(B, B) for i = 0..n, with n <= 4."""
    if n > 4:
        raise ValueError("Tor depth limited to 4")
    c_alg = s.c_alg
    b_alg = s.b_alg
    cast = s.morphism.ring_map
    # free resolution ... -> C^{r_2} -> C^{r_1} -> C -> B -> 0
    diffs = []
    prev = FpModule.free(c_alg, 1)
    cols = [[g] for g in s.a_gens]
    for _step in range(n + 1):
        cur = FpModule.free(c_alg, len(cols))
        d = ModHom(cur, prev, cols, check=False)
        diffs.append(d)
        cols = prev.syzygies_of(cols) if cols else []
        prev = cur
    # tensor with B: same ranks, coefficients cast along C -> B
    b_mods = [FpModule.free(b_alg, 1)]
    for d in diffs:
        b_mods.append(FpModule.free(b_alg, d.source.n_gens))
    b_diffs = []
    for i, d in enumerate(diffs):
        b_diffs.append(ModHom(b_mods[i + 1], b_mods[i],
                              [[cast.apply(p) for p in col]
                               for col in d.image_cols], check=False))
    reports = []
    for i in range(n + 1):
        if i == 0:
            _proj, coker = b_diffs[0].cokernel()
            reports.append(HomologyReport(coker))
        else:
            reports.append(HomologyReport(
                homology_at(b_diffs[i - 1], b_diffs[i])))
    return reports


def w_terms(s, n):
    """The monoid correction term in degree n: ker(Q^gp -> N^gp) (x) B
    for n = 1, its integral torsion (Tor_1^Z with B) for n = 2, zero
    otherwise."""
    b_alg = s.b_alg
    if n == 1:
        return HomologyReport(group_module(s.kergp, b_alg))
    if n == 2:
        p = b_alg.field.characteristic
        torsion, _rank = s.kergp.invariants()
        cnt = sum(1 for d in torsion if p and d % p == 0)
        return HomologyReport(FpModule.free(b_alg, cnt))
    return HomologyReport(FpModule.free(b_alg, 0))


def a_conormal(s):
    """a/a^2 (x) B: generated by the chosen generators of a, with the
    syzygies over C cast to B as relations."""
    syz = FpModule.free(s.c_alg, 1).syzygies_of([[g] for g in s.a_gens])
    cast = s.morphism.ring_map
    rels = [[cast.apply(p) for p in col] for col in syz]
    return FpModule(s.b_alg, len(s.a_gens), rels)


def conormal_module(s):
    """Cokernel of B (x) b/b^2 -> a/a^2 (+) kergp (x) B."""
    b_alg = s.b_alg
    field = b_alg.field
    amod = a_conormal(s)
    kmod = group_module(s.kergp, b_alg)
    na, nk = amod.n_gens, kmod.n_gens
    zero = b_alg.zero()

    rels = [list(c) + [zero] * nk for c in amod.rel_cols]
    rels += [[zero] * na + list(c) for c in kmod.rel_cols]

    q_rels = s.morphism.source.monoid.group_completion().relations
    free_c = FpModule.free(s.c_alg, 1)
    for g in s.b_gens:
        u, v = _binomial_words(s.q_alg, g)
        # first component: the image alpha_C(u) - alpha_C(v) in a,
        # expressed in the chosen generators and cast to B
        elt = s.q_to_c.apply(_monomial(s.q_alg, u)
                             - _monomial(s.q_alg, v))
        co = free_c.express_in([[g2] for g2 in s.a_gens], [elt])
        if co is None:
            raise ValueError("kernel binomial image does not lie in a")
        first = [s.morphism.ring_map.apply(p) for p in co]
        # second component: alpha_B(image of v) * (u - v) in the chosen
        # generators of ker(Q^gp -> N^gp)
        diff = [x - y for x, y in zip(u, v)]
        stacked = IntMatrix.from_columns(
            s.kergp_inc.columns() + q_rels.columns(), s.kergp_inc.nrows)
        sol = int_solve(stacked, diff)
        if sol is NO_SOLUTION:
            raise ValueError("kernel binomial does not land in ker gp")
        z = sol[: s.kergp_inc.ncols]
        scale = s.q_to_b.apply(_monomial(s.q_alg, v))
        second = [b_alg.from_int(c) * scale for c in z]
        rels.append(first + second)
    return FpModule(b_alg, na + nk, rels)


def check_edge_identity(s):
    """Compare H1 of the log complex against the conormal module.

    Returns (h1_report, conormal_report, agree)."""
    reports = log_homology(s.morphism)
    h1 = reports[1]
    con = HomologyReport(conormal_module(s))
    return h1, con, h1.same_as(con)
