"""Buchberger engine for submodules of free modules over a polynomial ring.

Vectors are dicts {(position, exponent tuple): coefficient}.  The module
order is position-over-term: position 0 is greatest, ties are broken by
the ring order.  Since earlier positions dominate outright, every
position prefix is an elimination block; appending tag positions behind
the main block therefore tracks coefficients: Groebner elements with
empty main part are syzygies, and reducing a tagged vector to zero reads
off its expression in the original columns.

Ring-level Groebner bases are the one-position case.
"""

from .polynomials import Poly, exp_mul, exp_divides, exp_div, exp_lcm


def pot_key(ring_order):
    okey = ring_order.key

    def key(term):
        pos, exp = term
        return (-pos, okey(exp))

    return key


def vec_is_zero(v):
    return not v


def vec_add_scaled(v, w, exp, c, field):
    """v + c * x^exp * w, in place on a copy of v."""
    out = dict(v)
    for (pos, e), a in w.items():
        t = (pos, exp_mul(e, exp))
        s = field.add(out.get(t, field.zero()), field.mul(c, a))
        if field.is_zero(s):
            out.pop(t, None)
        else:
            out[t] = s
    return out


def vec_scale(v, c, field):
    if field.is_zero(c):
        return {}
    return {t: field.mul(c, a) for t, a in v.items()}


def vec_leading(v, key):
    t = max(v, key=key)
    return t, v[t]


def vec_from_polys(col, start_pos=0):
    """Column of Polys (one per position) to a vector dict."""
    out = {}
    for i, p in enumerate(col):
        if p is None or p.is_zero():
            continue
        for exp, c in p.coeffs.items():
            out[(start_pos + i, exp)] = c
    return out


def polys_from_vec(v, n_pos, field):
    cols = [dict() for _ in range(n_pos)]
    for (pos, exp), c in v.items():
        if pos < n_pos:
            cols[pos][exp] = c
    return [Poly(d, field) for d in cols]


def reduce_vec(v, basis, key, field):
    """Full normal form of v against basis [(vec, lt, lc), ...]."""
    result = {}
    work = dict(v)
    while work:
        lt = max(work, key=key)
        c = work[lt]
        pos, exp = lt
        reducer = None
        for g, glt, glc in basis:
            if glt[0] == pos and exp_divides(glt[1], exp):
                reducer = (g, glt, glc)
                break
        if reducer is None:
            result[lt] = c
            del work[lt]
            continue
        g, glt, glc = reducer
        factor = field.neg(field.div(c, glc))
        work = vec_add_scaled(work, g, exp_div(exp, glt[1]), factor, field)
    return result


def _prep(vecs, key, field):
    out = []
    for v in vecs:
        if vec_is_zero(v):
            continue
        lt, lc = vec_leading(v, key)
        out.append((v, lt, lc))
    return out


def _single_position(v):
    pos = None
    for (p, _e) in v:
        if pos is None:
            pos = p
        elif p != pos:
            return None
    return pos


def buchberger_vec(gens, key, field):
    """Reduced Groebner basis of the submodule generated by `gens`.

    Output is canonical: monic, auto-reduced, sorted by ascending leading
    term.  Deterministic pair selection (normal strategy, smallest lcm).
    """
    basis = _prep(gens, key, field)
    # drop duplicate generators early
    seen = set()
    uniq = []
    for g, lt, lc in basis:
        fz = frozenset(vec_scale(g, field.inv(lc), field).items())
        if fz not in seen:
            seen.add(fz)
            uniq.append((g, lt, lc))
    basis = uniq

    def make_pairs(i_range, j_fixed=None):
        out = []
        idx = range(len(basis)) if j_fixed is None else [j_fixed]
        for j in idx:
            _gj, ltj, _lcj = basis[j]
            for i in i_range:
                if i >= j:
                    continue
                _gi, lti, _lci = basis[i]
                if lti[0] != ltj[0]:
                    continue
                out.append((i, j))
        return out

    pairs = make_pairs(range(len(basis)))

    def lcm_key(pair):
        i, j = pair
        lti = basis[i][1]
        ltj = basis[j][1]
        return (key((lti[0], exp_lcm(lti[1], ltj[1]))), i, j)

    while pairs:
        pairs.sort(key=lcm_key)
        i, j = pairs.pop(0)
        gi, lti, lci = basis[i]
        gj, ltj, lcj = basis[j]
        # Buchberger's coprime criterion, valid only for single-position
        # vectors (which behave like ring elements).
        if (_single_position(gi) is not None and _single_position(gi) ==
                _single_position(gj)):
            if all(min(a, b) == 0 for a, b in zip(lti[1], ltj[1])):
                continue
        lcm = exp_lcm(lti[1], ltj[1])
        s = vec_add_scaled({}, gi, exp_div(lcm, lti[1]),
                           field.inv(lci), field)
        s = vec_add_scaled(s, gj, exp_div(lcm, ltj[1]),
                           field.neg(field.inv(lcj)), field)
        s = reduce_vec(s, basis, key, field)
        if vec_is_zero(s):
            continue
        lt, lc = vec_leading(s, key)
        basis.append((s, lt, lc))
        pairs.extend(make_pairs(range(len(basis) - 1), len(basis) - 1))

    # inter-reduce
    changed = True
    while changed:
        changed = False
        for idx in range(len(basis)):
            g, lt, lc = basis[idx]
            rest = basis[:idx] + basis[idx + 1:]
            nf = reduce_vec(g, rest, key, field)
            if nf != g:
                changed = True
                if vec_is_zero(nf):
                    basis = rest
                else:
                    nlt, nlc = vec_leading(nf, key)
                    basis = rest + [(nf, nlt, nlc)]
                break
    out = []
    for g, lt, lc in basis:
        out.append(vec_scale(g, field.inv(lc), field))
    out.sort(key=lambda v: key(vec_leading(v, key)[0]))
    return out


class TaggedGB:
    """Groebner basis of tagged columns, for syzygies and expressions.

    `columns` are vectors supported in positions < n_main; column i is
    tagged with the unit vector in position n_main + i before the basis
    is computed.  Main positions dominate the tags, so:

      * elements with empty main part, restricted to the tags, generate
        the syzygy module of the columns;
      * reducing (v, 0-tags) leaves tag coordinates that express v in the
        columns whenever the main part reduces to zero.
    """

    def __init__(self, columns, n_main, nvars, field, ring_order):
        self.n_main = n_main
        self.n_cols = len(columns)
        self.nvars = nvars
        self.field = field
        self.key = pot_key(ring_order)
        zero_exp = (0,) * nvars
        tagged = []
        for i, col in enumerate(columns):
            v = dict(col)
            v[(n_main + i, zero_exp)] = field.one()
            tagged.append(v)
        self.gb = buchberger_vec(tagged, self.key, field)
        self._basis = _prep(self.gb, self.key, field)

    def main_part(self, v):
        return {t: c for t, c in v.items() if t[0] < self.n_main}

    def tag_part(self, v):
        return {(t[0] - self.n_main, t[1]): c
                for t, c in v.items() if t[0] >= self.n_main}

    def syzygies(self):
        """Generators of the syzygy module, as vectors over tag positions."""
        out = []
        for g in self.gb:
            if not self.main_part(g):
                out.append(self.tag_part(g))
        return out

    def plain_gb(self):
        """Reduced Groebner basis of the column span (main parts only)."""
        return [self.main_part(g) for g in self.gb if self.main_part(g)]

    def express(self, v):
        """Coefficients writing v in the columns, or None.

        Returns a list of Polys c_i with v = sum c_i * column_i; canonical
        because the tagged reduction is a full normal form.
        """
        nf = reduce_vec(dict(v), self._basis, self.key, self.field)
        if self.main_part(nf):
            return None
        tags = self.tag_part(nf)
        cols = polys_from_vec(tags, self.n_cols, self.field)
        return [-p for p in cols]


def module_gb(columns, ring_order, field):
    """Reduced Groebner basis of the span of the columns (no tracking)."""
    key = pot_key(ring_order)
    return buchberger_vec(list(columns), key, field)


def reduce_by_module_gb(v, gb, ring_order, field):
    key = pot_key(ring_order)
    return reduce_vec(dict(v), _prep(gb, key, field), key, field)
