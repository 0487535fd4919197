"""Three-term logarithmic cotangent complex of a prelog morphism.

Given (A, M) -> (B, N) and a chosen factorization through (R, P0), the
complex is assembled degreewise as a pushout of three faces:

  * the front face, the classical complex of R -> B over A with the
    images of the monoid-side ideal generators placed first in the cover;
  * the back face, the classical complex of k[P0] -> k[N] over k[M],
    base changed to B;
  * the right face, the integer complex W1 -> Q1 -> P0^gp / M^gp of the
    monoid data, base changed to B.

The comparison maps out of the back face are the coordinate inclusions
(alpha) and the monoid-side maps (beta) built from the binomial shape of
ker(k[P0] -> k[N]).  Every square is checked; a failure raises
CommutationFailure, which callers surface as an internal error.
"""

from dataclasses import dataclass

from .intlinalg import snf
from .groebner import AlgebraMap
from .modules import (FpModule, ModHom, Complex3, tensor_complex,
                      HomologyReport, pushout)
from .aqclassic import (build_ls, ls_complex, kernel_ideal_gens,
                        coefficient_module, aq_classical)
from .monoids import choose_log_factorization
from .kcomplex import (kdata_from_factorization, group_module,
                       int_matrix_hom, w0_coordinates)


class CommutationFailure(Exception):
    """A square of the main diagram failed to commute, or a canonical
    lift required by the construction does not exist."""


def _binomial_words(alg, p):
    """(u, v) with p = x^u - x^v, for an element of a monomial-map kernel."""
    terms = sorted(p.coeffs.items(), key=lambda t: alg.order.key(t[0]),
                   reverse=True)
    if len(terms) != 2:
        raise CommutationFailure(
            f"kernel generator {alg.str_of(p)} is not a binomial")
    (u, cu), (v, cv) = terms
    one = alg.field.one()
    if cu != one or cv != alg.field.neg(one):
        raise CommutationFailure(
            f"kernel generator {alg.str_of(p)} is not a monomial difference")
    return u, v


@dataclass
class Diagram1:
    """All faces and comparison maps of the main diagram."""

    fac: object
    p0_alg: object            # k[P0]
    n_alg: object             # k[N]
    h_alg: AlgebraMap         # k[P0] -> k[N]
    p0_to_b: AlgebraMap       # k[P0] -> B (alpha_B after h)
    s_map: AlgebraMap         # k[P0] -> R (structure map of the middle)
    j_gens: list              # binomial generators of ker(k[P0] -> k[N])
    front: object             # LsData of R -> B over A
    front_complex: Complex3
    back: object              # LsData of k[P0] -> k[N] over k[M], in B
    back_complex: Complex3
    kd: object                # integer data of the right face
    right_complex: Complex3
    alphas: list              # back -> front, degrees 0..2
    betas: list               # back -> right, degrees 0..2


def _check_square(low, high, label):
    if not low.equals(high):
        raise CommutationFailure(f"square {label} does not commute")


def build_diagram1(fac):
    """Faces and comparison maps for a chosen factorization."""
    mor = fac.morphism
    a_alg = mor.source.algebra
    b_alg = mor.target.algebra
    r_alg = fac.mid.algebra
    field = b_alg.field
    m = mor.source.monoid
    n = mor.target.monoid
    p0 = fac.mid.monoid
    h = fac.right.monoid_map

    p0_alg = p0.monoid_algebra(field)
    n_alg = n.monoid_algebra(field)
    h_alg = AlgebraMap(p0_alg, n_alg,
                       [n_alg.nf(_monomial(n_alg, h.apply(_unit(p0, i))))
                        for i in range(p0.n_gens)], check=False)
    p0_to_b = AlgebraMap(p0_alg, b_alg,
                         [mor.target.alpha_of(h.apply(_unit(p0, i)))
                          for i in range(p0.n_gens)], check=False)
    s_map = AlgebraMap(p0_alg, r_alg, fac.mid.alpha, check=False)

    j_gens = kernel_ideal_gens(h_alg)
    j_words = [_binomial_words(p0_alg, j) for j in j_gens]

    # front face: classical data of R -> B, J images first in the cover
    extra = [s_map.apply(j) for j in j_gens]
    front_gens = None
    if getattr(fac, "front_raw", False):
        front_gens = list(reversed(kernel_ideal_gens(fac.right.ring_map)))
    front = build_ls(r_alg, b_alg, fac.right.ring_map, a_alg.nvars,
                     front_gens=front_gens, extra_gens=extra)
    front_complex = ls_complex(front)

    # back face: classical data of k[P0] -> k[N] over k[M], cast to B
    back = build_ls(p0_alg, b_alg, p0_to_b, m.n_gens, front_gens=j_gens)
    back_complex = ls_complex(back)

    # right face
    kd = kdata_from_factorization(fac)
    f2r = FpModule.free(b_alg, kd.n_w1)
    f1r = FpModule.free(b_alg, kd.n_q1)
    f0r = group_module(kd.quotient, b_alg)
    right_complex = Complex3(int_matrix_hom(f2r, f1r, kd.w1_cols),
                             int_matrix_hom(f1r, f0r, kd.w0_inc))

    alphas = _build_alphas(front, front_complex, back, back_complex, s_map)
    betas = _build_betas(back_complex, right_complex, kd, p0, p0_to_b,
                         j_words, m.n_gens)

    # mixed squares
    _check_square(alphas[1].compose(back_complex.d2),
                  front_complex.d2.compose(alphas[2]), "alpha degree 2")
    _check_square(alphas[0].compose(back_complex.d1),
                  front_complex.d1.compose(alphas[1]), "alpha degree 1")
    _check_square(betas[1].compose(back_complex.d2),
                  right_complex.d2.compose(betas[2]), "beta degree 2")
    _check_square(betas[0].compose(back_complex.d1),
                  right_complex.d1.compose(betas[1]), "beta degree 1")

    return Diagram1(fac, p0_alg, n_alg, h_alg, p0_to_b, s_map, j_gens,
                    front, front_complex, back, back_complex, kd,
                    right_complex, alphas, betas)


def _unit(monoid, i):
    return tuple(1 if j == i else 0 for j in range(monoid.n_gens))


def _monomial(alg, word):
    from .polynomials import Poly
    return Poly.monomial(tuple(word), alg.field.one(), alg.field)


def _build_alphas(front, front_complex, back, back_complex, s_map):
    """Coordinate inclusions back -> front in degrees 0..2."""
    g = back.n_cover
    # degree 0: dx_j for the new monoid generators sit first among the
    # non-base variables of R
    a0 = ModHom(back_complex.c0, front_complex.c0,
                [front_complex.c0.gen_column(j)
                 for j in range(back_complex.c0.n_gens)], check=False)
    # degree 1: the J images are the first cover generators
    a1 = ModHom(back_complex.c1, front_complex.c1,
                [front_complex.c1.gen_column(l) for l in range(g)],
                check=False)
    # degree 2: express each cast syzygy in the front syzygy generators
    r_alg = front.r
    free_front = FpModule.free(r_alg, front.n_cover)
    r_to_b = front.r_to_b
    cols = []
    for col in back.u_cols:
        cast = [s_map.apply(p) for p in col]
        cast += [r_alg.zero()] * (front.n_cover - g)
        co = free_front.express_in(front.u_cols, cast)
        if co is None:
            raise CommutationFailure(
                "cast syzygy is not a combination of the front syzygies")
        cols.append([r_to_b.apply(p) for p in co])
    a2 = ModHom(back_complex.c2, front_complex.c2, cols, check=False)
    return [a0, a1, a2]


def _build_betas(back_complex, right_complex, kd, p0, p0_to_b, j_words, n_m):
    """Monoid-side maps back -> right in degrees 0..2."""
    b_alg = p0_to_b.target
    p0_rels = p0.group_completion().relations

    # degree 0: dx -> alpha_B(h(x)) * class of x
    cols0 = []
    for jx in range(back_complex.c0.n_gens):
        pos = n_m + jx
        col = right_complex.c0.zero_column()
        col[pos] = p0_to_b.images[pos]
        cols0.append(col)
    b0 = ModHom(back_complex.c0, right_complex.c0, cols0, check=False)

    # degree 1: x^u - x^v -> alpha_B(h(v)) * (u - v in W0 coordinates)
    cols1 = []
    for u, v in j_words:
        diff = [a - b for a, b in zip(u, v)]
        z = w0_coordinates(kd, p0_rels, diff)
        if z is None:
            raise CommutationFailure(
                "kernel binomial does not land in W0")
        scale = p0_to_b.apply(_monomial(p0_to_b.source, v))
        cols1.append([b_alg.from_int(c) * scale for c in z])
    b1 = ModHom(back_complex.c1, right_complex.c1, cols1, check=False)

    # degree 2: lift each syzygy image through the inclusion of W1
    w0_mod = group_module(kd.w0, b_alg)
    res = snf(kd.w1_cols)
    cols2 = []
    for col in back_complex.d2.image_cols:
        # col is already the syzygy cast to B over the back cover
        xi = right_complex.c1.zero_column()
        for c, img in zip(col, cols1):
            if c.is_zero():
                continue
            for i, p in enumerate(img):
                xi[i] = xi[i] + c * p
        xi = [b_alg.nf(p) for p in xi]
        if not w0_mod.is_zero_element(list(xi)):
            raise CommutationFailure(
                "syzygy image has nonzero component in W0")
        eta = _int_preimage(res, xi, b_alg)
        if eta is None:
            raise CommutationFailure(
                "syzygy image does not lift through W1")
        cols2.append(eta)
    b2 = ModHom(back_complex.c2, right_complex.c2, cols2, check=False)
    return [b0, b1, b2]


def _int_preimage(res, xi, b_alg):
    """Canonical eta with W1_cols * eta = xi over the algebra, where the
    Smith form of the integer inclusion is given, or None."""
    field = b_alg.field
    n_w1 = res.v.nrows
    uxi = []
    for row in res.u.rows:
        acc = b_alg.zero()
        for a, p in zip(row, xi):
            if a:
                acc = acc + p.scale(field.from_int(a))
        uxi.append(b_alg.nf(acc))
    d = res.invariant_factors
    y = []
    for i, p in enumerate(uxi):
        di = field.from_int(d[i]) if i < len(d) else field.zero()
        if field.is_zero(di):
            if not p.is_zero():
                return None
            if i < n_w1:
                y.append(b_alg.zero())
        else:
            if i < n_w1:
                y.append(p.scale(field.inv(di)))
            elif not p.is_zero():
                return None
    while len(y) < n_w1:
        y.append(b_alg.zero())
    eta = []
    for row in res.v.rows:
        acc = b_alg.zero()
        for a, p in zip(row, y):
            if a:
                acc = acc + p.scale(field.from_int(a))
        eta.append(b_alg.nf(acc))
    return eta


@dataclass
class LogLsData:
    """Assembled pushout complex with the face inclusions."""

    diagram: Diagram1
    complex: Complex3
    inc_front: list            # front face -> pushout, degrees 0..2
    inc_right: list            # right face -> pushout (epsilon)


def assemble_log_ls(diagram):
    """Degreewise pushout of the faces along alpha and beta."""
    fronts = [diagram.front_complex.c0, diagram.front_complex.c1,
              diagram.front_complex.c2]
    rights = [diagram.right_complex.c0, diagram.right_complex.c1,
              diagram.right_complex.c2]
    pushed = []
    for i in range(3):
        pushed.append(pushout(diagram.alphas[i], diagram.betas[i]))
    mods = [p[0] for p in pushed]
    inc_front = [p[1] for p in pushed]
    inc_right = [p[2] for p in pushed]

    def induced(deg, front_d, right_d):
        lo = mods[deg - 1]
        cols = [inc_front[deg - 1].apply(c) for c in front_d.image_cols]
        cols += [inc_right[deg - 1].apply(c) for c in right_d.image_cols]
        return ModHom(mods[deg], lo, cols, check=False)

    d1 = induced(1, diagram.front_complex.d1, diagram.right_complex.d1)
    d2 = induced(2, diagram.front_complex.d2, diagram.right_complex.d2)
    try:
        cx = Complex3(d2, d1)
    except ValueError as e:
        raise CommutationFailure(str(e))
    return LogLsData(diagram, cx, inc_front, inc_right)


def log_ls(morphism, options=None):
    """Factor the morphism and assemble its log complex."""
    fac = choose_log_factorization(morphism, options)
    if options is not None and options.front_raw:
        fac.front_raw = True
    return assemble_log_ls(build_diagram1(fac))


def log_homology(morphism, coefficients=None, options=None):
    """(H0, H1, H2) HomologyReports of the log complex with the given
    coefficient module (an FpModule over B, or a name)."""
    data = log_ls(morphism, options)
    b_alg = morphism.target.algebra
    t = coefficients if isinstance(coefficients, FpModule) \
        else coefficient_module(b_alg, coefficients)
    h0, h1, h2 = tensor_complex(data.complex, t).homology()
    return HomologyReport(h0), HomologyReport(h1), HomologyReport(h2)


def check_strict_reduction(morphism, coefficients=None, options=None):
    """For a strict morphism, compare the log homology reports against
    the classical ones of the underlying ring map.

    Returns (log_reports, classical_reports, agree)."""
    if not morphism.is_strict():
        raise ValueError("strict reduction check needs a strict morphism")
    log_reports = log_homology(morphism, coefficients, options)
    cls_reports = aq_classical(morphism.ring_map, coefficients)
    agree = all(a.same_as(b) for a, b in zip(log_reports, cls_reports))
    return log_reports, cls_reports, agree


def check_compatibility_sequence(morphism, options=None):
    """Structural checks of the pushout against its faces.

    * the right-face inclusions in degrees 0 and 1 are split injective
      (an explicit retraction is produced and verified);
    * the cokernel of alpha agrees with the cokernel of the right-face
      inclusion in every degree;
    * with residue coefficients, the dimension of each assembled term in
      degrees 0 and 1 is dim(front) + dim(right) - dim(back).

    Returns a dict of booleans.
    """
    data = log_ls(morphism, options)
    dg = data.diagram
    out = {}

    # alpha is a coordinate inclusion in degrees 0 and 1; the retraction
    # is the projection onto those coordinates
    for i in (0, 1):
        alpha = dg.alphas[i]
        front_mod = alpha.target
        back_mod = alpha.source
        nb = back_mod.n_gens
        cols = [back_mod.gen_column(j) if j < nb else back_mod.zero_column()
                for j in range(front_mod.n_gens)]
        try:
            rho = ModHom(front_mod, back_mod, cols, check=True)
            out[f"alpha_{i}_split"] = rho.compose(alpha).equals(
                ModHom.identity(back_mod))
        except ValueError:
            out[f"alpha_{i}_split"] = False

    # split injectivity of the right-face inclusion via an explicit
    # retraction
    for i in (0, 1):
        alpha, beta = dg.alphas[i], dg.betas[i]
        front_mod = alpha.target
        right_mod = beta.target
        push_mod = data.complex.c0 if i == 0 else data.complex.c1
        nb = alpha.source.n_gens
        cols = []
        for j in range(front_mod.n_gens):
            # alpha is the inclusion of the first nb coordinates
            cols.append(beta.image_cols[j] if j < nb
                        else right_mod.zero_column())
        for j in range(right_mod.n_gens):
            cols.append(right_mod.gen_column(j))
        try:
            rho = ModHom(push_mod, right_mod, cols, check=True)
            ident = rho.compose(data.inc_right[i])
            out[f"epsilon_{i}_split"] = ident.equals(
                ModHom.identity(right_mod))
        except ValueError:
            out[f"epsilon_{i}_split"] = False

    # cokernel comparison in every degree
    for i in range(3):
        _p, ca = dg.alphas[i].cokernel()
        _p, ce = data.inc_right[i].cokernel()
        out[f"coker_{i}_match"] = HomologyReport(ca).same_as(
            HomologyReport(ce))

    # dimension count with residue coefficients
    b_alg = morphism.target.algebra
    t = coefficient_module(b_alg, "residue")
    from .modules import tensor_module
    backs = [dg.back_complex.c0, dg.back_complex.c1]
    fronts = [dg.front_complex.c0, dg.front_complex.c1]
    rights = [dg.right_complex.c0, dg.right_complex.c1]
    pushes = [data.complex.c0, data.complex.c1]
    for i in (0, 1):
        dims = [tensor_module(m, t).k_dimension()
                for m in (pushes[i], fronts[i], rights[i], backs[i])]
        if None in dims:
            out[f"euler_{i}"] = False
        else:
            out[f"euler_{i}"] = dims[0] == dims[1] + dims[2] - dims[3]
    return out
