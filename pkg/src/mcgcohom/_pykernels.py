"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Signatures and results are identical; see :mod:`mcgcohom.kernels`.
"""


def qprime_masks(slot_comp, partner, slot_curve, comp_genus, comp_nslots, n_curves):
    """Flip masks whose induced slot map is a component-wise homeomorphism.

    ``partner[s]`` is the slot glued to ``s`` (``s`` itself for original
    slots) and ``slot_curve[s]`` its curve index (-1 for original slots).
    """
    ncomp = len(comp_genus)
    nslots = len(slot_comp)
    out = []
    for mask in range(1 << n_curves):
        img = [-1] * ncomp
        ok = True
        for s in range(nslots):
            cv = slot_curve[s]
            t = partner[s] if cv >= 0 and (mask >> cv) & 1 else s
            c = slot_comp[s]
            d = slot_comp[t]
            if img[c] < 0:
                img[c] = d
            elif img[c] != d:
                ok = False
                break
        if not ok:
            continue
        used = [False] * ncomp
        for c in range(ncomp):
            d = img[c] if img[c] >= 0 else c
            if used[d] or comp_genus[c] != comp_genus[d] or comp_nslots[c] != comp_nslots[d]:
                ok = False
                break
            used[d] = True
        if ok:
            out.append(mask)
    return out


def cocycle_violations(n, npts, ngens, rgen, parent, pgen, order, inv_act, vals, modulus, first_only):
    """Count triples ``(a, b, r)`` violating ``u(ab, r) = u(a, r) + u(b, a^-1 r)``.

    Group elements are indices ``0..n-1``.  ``rgen[k*ngens+s]`` is the index
    of ``k * gen_s``; ``order`` is a breadth-first order from the identity
    with ``parent[b] * gen_{pgen[b]} = b``.  ``inv_act[a*npts+r]`` is
    ``a^-1 r`` and ``vals[a*npts+r]`` is ``u(a, r)``.  With ``modulus > 0``
    values are compared mod ``modulus``.  Returns ``(count, a, b, r)`` with
    the first violation found, or ``(0, -1, -1, -1)``.
    """
    row = [0] * n
    count = 0
    first = (-1, -1, -1)
    ident = order[0]
    for a in range(n):
        row[ident] = a
        for i in range(1, n):
            b = order[i]
            row[b] = rgen[row[parent[b]] * ngens + pgen[b]]
        base_a = a * npts
        for b in range(n):
            base_ab = row[b] * npts
            base_b = b * npts
            for r in range(npts):
                lhs = vals[base_ab + r]
                rhs = vals[base_a + r] + vals[base_b + inv_act[base_a + r]]
                diff = lhs - rhs
                if modulus > 0:
                    diff %= modulus
                if diff != 0:
                    if count == 0:
                        first = (a, b, r)
                    count += 1
                    if first_only:
                        return (count, first[0], first[1], first[2])
    return (count, first[0], first[1], first[2])
