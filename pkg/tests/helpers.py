"""Shared test utilities: morphism construction from input text and the
degree-truncated linear-algebra oracle used to cross-check Groebner
results."""

from itertools import product

from logaq.inputspec import parse_input, build_morphism
from logaq.polynomials import Poly


def morphism(text, field_name=None):
    return build_morphism(parse_input(text), field_name=field_name)


def monomials_upto(nvars, degree):
    """All exponent vectors of total degree <= degree."""
    out = []
    for exp in product(range(degree + 1), repeat=nvars):
        if sum(exp) <= degree:
            out.append(exp)
    return sorted(out)


def poly_vector(p, basis_index, field):
    """Coefficient vector of p on an exponent-vector basis."""
    v = [field.zero()] * len(basis_index)
    for e, c in p.coeffs.items():
        v[basis_index[e]] = c
    return v


def truncated_ideal_span(gens, nvars, degree, field):
    """Row vectors spanning the degree-<= part of the ideal.

    Valid as the full truncation for homogeneous generators, where
    multiples cannot cancel back down in degree.
    """
    basis = monomials_upto(nvars, degree)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens:
        d = g.total_degree()
        for m in monomials_upto(nvars, degree - d):
            q = g.mul_monomial(m, field.one())
            if all(sum(e) <= degree for e in q.coeffs):
                rows.append(poly_vector(q, index, field))
    return rows, basis, index


def span_rank(rows, field):
    from logaq.intlinalg import field_rank
    return field_rank(rows, field) if rows else 0


def in_span(rows, vec, field):
    """Whether vec lies in the row span, by a rank comparison."""
    r0 = span_rank(rows, field)
    return span_rank(rows + [vec], field) == r0


def oracle_syzygy_dim(gens, nvars, degree, field):
    """Dimension of { (c_i) : sum c_i g_i = 0, deg(c_i g_i) <= degree }
    computed by plain linear algebra over the field."""
    from logaq.intlinalg import field_kernel
    basis = monomials_upto(nvars, degree)
    index = {e: i for i, e in enumerate(basis)}
    cols = []
    layout = []
    for i, g in enumerate(gens):
        for m in monomials_upto(nvars, degree - g.total_degree()):
            cols.append(poly_vector(g.mul_monomial(m, field.one()),
                                    index, field))
            layout.append((i, m))
    if not cols:
        return 0, layout
    rows = [[c[r] for c in cols] for r in range(len(basis))]
    return len(field_kernel(rows, field)), layout


def syzygy_span_dim(syzygies, gens, nvars, degree, field):
    """Dimension of the degree-truncated span of the computed syzygies,
    in the same coordinate layout as oracle_syzygy_dim."""
    _dim, layout = oracle_syzygy_dim(gens, nvars, degree, field)
    index = {im: j for j, im in enumerate(layout)}
    rows = []
    for s in syzygies:
        bounds = [degree - g.total_degree() for g in gens]
        top = max((bounds[i] - s[i].total_degree()
                   for i in range(len(gens)) if not s[i].is_zero()),
                  default=-1)
        for m in monomials_upto(nvars, max(top, -1) if top >= 0 else -1):
            row = [field.zero()] * len(layout)
            ok = True
            for i, comp in enumerate(s):
                q = comp.mul_monomial(m, field.one())
                for e, c in q.coeffs.items():
                    if (i, e) not in index:
                        ok = False
                        break
                    row[index[(i, e)]] = c
                if not ok:
                    break
            if ok:
                rows.append(row)
    return span_rank(rows, field)
