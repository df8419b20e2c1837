"""Pure-Python orbit kernel: bytecode evaluation and orbit classification.

This is the reference semantics; ``_core.pyx`` is a transliteration of
this module into Cython. Both operate on plain doubles with the same
formulas so results are bit-identical across backends. Keep the two in
sync when changing anything here.

Value states: 0 finite, 1 infinity, 2 undefined. Undefined is absorbing.
"""

from __future__ import annotations

import math

from ..program import (OP_ADD, OP_COS, OP_DIV, OP_EXP, OP_MUL, OP_NEG,
                       OP_POWI, OP_PUSH_CONST, OP_PUSH_Z, OP_SIN, OP_SUB)

BACKEND = "python"

ST_FINITE = 0
ST_INF = 1
ST_UNDEF = 2

# real-part bound above which exp() is treated as overflow to infinity
EXP_OVERFLOW = 700.0

# kind codes (match ClassRaster legend)
K_UNRESOLVED = 0
K_ESCAPE = 1
K_BAKER = 2
K_ATTRACTING = 3
K_PARABOLIC = 4
K_WANDERING = 5
K_SINGULAR_HIT = 6

# target classes
T_NONE = 0
T_FINITE = 1
T_INF = 2

# multiplier distance to 1 below which a cycle is only "parabolic suspect"
PARABOLIC_BAND = 1e-3


def _guard2(re, im):
    if math.isnan(re) or math.isnan(im):
        return 0.0, 0.0, ST_UNDEF
    if math.isinf(re) or math.isinf(im):
        return 0.0, 0.0, ST_INF
    return re, im, ST_FINITE


def cx_add(ar, ai, sa, br, bi, sb):
    if sa == ST_UNDEF or sb == ST_UNDEF:
        return 0.0, 0.0, ST_UNDEF
    if sa == ST_INF or sb == ST_INF:
        if sa == ST_INF and sb == ST_INF:
            return 0.0, 0.0, ST_UNDEF
        return 0.0, 0.0, ST_INF
    return _guard2(ar + br, ai + bi)


def cx_sub(ar, ai, sa, br, bi, sb):
    if sa == ST_UNDEF or sb == ST_UNDEF:
        return 0.0, 0.0, ST_UNDEF
    if sa == ST_INF or sb == ST_INF:
        if sa == ST_INF and sb == ST_INF:
            return 0.0, 0.0, ST_UNDEF
        return 0.0, 0.0, ST_INF
    return _guard2(ar - br, ai - bi)


def cx_mul(ar, ai, sa, br, bi, sb):
    if sa == ST_UNDEF or sb == ST_UNDEF:
        return 0.0, 0.0, ST_UNDEF
    if sa == ST_INF or sb == ST_INF:
        if (sa == ST_FINITE and ar == 0.0 and ai == 0.0) or \
           (sb == ST_FINITE and br == 0.0 and bi == 0.0):
            return 0.0, 0.0, ST_UNDEF
        return 0.0, 0.0, ST_INF
    re = ar * br - ai * bi
    im = ar * bi + ai * br
    if math.isnan(re) or math.isnan(im):
        # inf - inf from overflowing partial products: the true modulus
        # overflowed, so the point is at infinity
        return 0.0, 0.0, ST_INF
    return _guard2(re, im)


def cx_div(ar, ai, sa, br, bi, sb):
    if sa == ST_UNDEF or sb == ST_UNDEF:
        return 0.0, 0.0, ST_UNDEF
    if sa == ST_INF and sb == ST_INF:
        return 0.0, 0.0, ST_UNDEF
    if sa == ST_INF:
        return 0.0, 0.0, ST_INF
    if sb == ST_INF:
        return 0.0, 0.0, ST_FINITE
    d = br * br + bi * bi
    if d == 0.0:
        if ar == 0.0 and ai == 0.0:
            return 0.0, 0.0, ST_UNDEF
        return 0.0, 0.0, ST_INF
    if math.isinf(d):
        # |denominator| beyond double range: quotient underflows to 0
        return 0.0, 0.0, ST_FINITE
    return _guard2((ar * br + ai * bi) / d, (ai * br - ar * bi) / d)


def cx_neg(ar, ai, sa):
    if sa != ST_FINITE:
        return 0.0, 0.0, sa
    return -ar, -ai, ST_FINITE


def cx_exp(ar, ai, sa):
    if sa == ST_UNDEF or sa == ST_INF:
        return 0.0, 0.0, ST_UNDEF
    if ar > EXP_OVERFLOW:
        return 0.0, 0.0, ST_INF
    m = math.exp(ar)
    return _guard2(m * math.cos(ai), m * math.sin(ai))


def _cosh(x):
    try:
        return math.cosh(x)
    except OverflowError:
        return math.inf


def _sinh(x):
    try:
        return math.sinh(x)
    except OverflowError:
        return math.copysign(math.inf, x)


def cx_sin(ar, ai, sa):
    if sa == ST_UNDEF or sa == ST_INF:
        return 0.0, 0.0, ST_UNDEF
    return _guard2(math.sin(ar) * _cosh(ai), math.cos(ar) * _sinh(ai))


def cx_cos(ar, ai, sa):
    if sa == ST_UNDEF or sa == ST_INF:
        return 0.0, 0.0, ST_UNDEF
    return _guard2(math.cos(ar) * _cosh(ai), -math.sin(ar) * _sinh(ai))


def cx_powi(ar, ai, sa, k):
    wr, wi, ws = 1.0, 0.0, ST_FINITE
    for _ in range(abs(k)):
        wr, wi, ws = cx_mul(wr, wi, ws, ar, ai, sa)
    if k < 0:
        return cx_div(1.0, 0.0, ST_FINITE, wr, wi, ws)
    return wr, wi, ws


def eval_program(ops, consts, zr, zi):
    """Run a compiled program at finite z; returns (re, im, state)."""
    stack = []
    push = stack.append
    for idx in range(len(ops)):
        code = ops[idx][0]
        arg = ops[idx][1]
        if code == OP_PUSH_Z:
            push((zr, zi, ST_FINITE))
        elif code == OP_PUSH_CONST:
            push((consts[arg][0], consts[arg][1], ST_FINITE))
        elif code == OP_ADD:
            b = stack.pop()
            a = stack.pop()
            push(cx_add(a[0], a[1], a[2], b[0], b[1], b[2]))
        elif code == OP_SUB:
            b = stack.pop()
            a = stack.pop()
            push(cx_sub(a[0], a[1], a[2], b[0], b[1], b[2]))
        elif code == OP_MUL:
            b = stack.pop()
            a = stack.pop()
            push(cx_mul(a[0], a[1], a[2], b[0], b[1], b[2]))
        elif code == OP_DIV:
            b = stack.pop()
            a = stack.pop()
            push(cx_div(a[0], a[1], a[2], b[0], b[1], b[2]))
        elif code == OP_NEG:
            a = stack.pop()
            push(cx_neg(a[0], a[1], a[2]))
        elif code == OP_POWI:
            a = stack.pop()
            push(cx_powi(a[0], a[1], a[2], arg))
        elif code == OP_EXP:
            a = stack.pop()
            push(cx_exp(a[0], a[1], a[2]))
        elif code == OP_SIN:
            a = stack.pop()
            push(cx_sin(a[0], a[1], a[2]))
        elif code == OP_COS:
            a = stack.pop()
            push(cx_cos(a[0], a[1], a[2]))
    return stack[-1]


def sphere_norm(re, im):
    m2 = re * re + im * im
    if m2 > 1e300 or math.isinf(m2):
        return math.inf
    return math.sqrt(1.0 + m2)


def chordal_finite(ar, ai, br, bi):
    sa = sphere_norm(ar, ai)
    sb = sphere_norm(br, bi)
    if math.isinf(sa) and math.isinf(sb):
        return 0.0
    if math.isinf(sa):
        return 2.0 / sb
    if math.isinf(sb):
        return 2.0 / sa
    dr = ar - br
    di = ai - bi
    return 2.0 * math.sqrt(dr * dr + di * di) / (sa * sb)


def chordal_inf(re, im):
    s = sphere_norm(re, im)
    return 0.0 if math.isinf(s) else 2.0 / s


def _nearest_singular(zr, zi, sing_re, sing_im, n_sing, sing_sn=None):
    # with cached sphere norms for the singular points, sphere_norm(z) is
    # hoisted out of the scan; the per-point arithmetic is identical to
    # chordal_finite
    jmin = -1
    dmin = math.inf
    if sing_sn is None:
        for j in range(n_sing):
            d = chordal_finite(zr, zi, sing_re[j], sing_im[j])
            if d < dmin:
                dmin = d
                jmin = j
        return jmin, dmin
    sa = sphere_norm(zr, zi)
    for j in range(n_sing):
        sb = sing_sn[j]
        if math.isinf(sa):
            d = 0.0 if math.isinf(sb) else 2.0 / sb
        elif math.isinf(sb):
            d = 2.0 / sa
        else:
            dr = zr - sing_re[j]
            di = zi - sing_im[j]
            d = 2.0 * math.sqrt(dr * dr + di * di) / (sa * sb)
        if d < dmin:
            dmin = d
            jmin = j
    return jmin, dmin


def _norm_prog(ops, consts):
    return ([(int(o[0]), int(o[1])) for o in ops],
            [(float(c[0]), float(c[1])) for c in consts])


def classify_point(fops, fconsts, dops, dconsts, sr, si,
                   sing_re, sing_im, n_sing,
                   max_iter, escape_radius, eps_sing, eps_cycle,
                   p_max, confirm_steps, slow_confirm, capture_radius,
                   has_period, pre, pim, out_band=None):
    """Classify one seed.

    Returns (kind, tclass, tre, tim, sing_idx, period, mre, mim, has_mult,
    iterations, residual). ``sing_idx`` indexes the supplied singular list
    for Baker/hit targets, -1 otherwise. Wandering targets are the raw
    quotient-orbit endpoint (snapping to singular points is the caller's
    job).
    """
    fops, fconsts = _norm_prog(fops, fconsts)
    dops, dconsts = _norm_prog(dops, dconsts)
    sing_re = [float(x) for x in sing_re]
    sing_im = [float(x) for x in sing_im]
    sing_sn = [sphere_norm(sing_re[j], sing_im[j]) for j in range(n_sing)]
    R2 = escape_radius * escape_radius
    eps_c2 = eps_cycle * eps_cycle

    zr, zi = sr, si
    jmin, dmin = _nearest_singular(zr, zi, sing_re, sing_im, n_sing, sing_sn)
    if has_period and out_band is not None:
        pnorm2 = pre * pre + pim * pim
        out_band[0] = int(math.floor((zr * pre + zi * pim) / pnorm2 + 0.5))
    if n_sing > 0 and dmin < eps_sing:
        return (K_SINGULAR_HIT, T_FINITE, sing_re[jmin], sing_im[jmin],
                jmin, 0, 0.0, 0.0, 0, 0, dmin)

    prev_jmin, prev_dmin = jmin, dmin
    baker_streak = 0
    noninc_streak = 0
    inf_streak = 0
    prev_m2 = zr * zr + zi * zi

    hist_re = [0.0] * p_max
    hist_im = [0.0] * p_max
    hist_re[0] = zr
    hist_im[0] = zi
    last_match = [-2] * (p_max + 1)
    cycles_enabled = True

    pnorm2 = 1.0
    band_prev = 0
    up_streak = down_streak = 0
    prev_dq = math.inf
    quot_streak = 0
    if has_period:
        pnorm2 = pre * pre + pim * pim
        band_prev = int(math.floor((sr * pre + si * pim) / pnorm2 + 0.5))

    pzr, pzi = zr, zi
    wpos = 0  # ring position of z_n in hist (n mod p_max)
    n = 0
    for n in range(1, max_iter + 1):
        wr, wi, st = eval_program(fops, fconsts, zr, zi)
        if st == ST_UNDEF:
            return (K_SINGULAR_HIT, T_NONE, 0.0, 0.0, -1,
                    0, 0.0, 0.0, 0, n, 0.0)
        if st == ST_INF:
            return (K_ESCAPE, T_INF, 0.0, 0.0, -1, 0, 0.0, 0.0, 0, n, 0.0)
        pzr, pzi = zr, zi
        zr, zi = wr, wi
        m2 = zr * zr + zi * zi
        wpos += 1
        if wpos == p_max:
            wpos = 0

        if n_sing > 0:
            jmin, dmin = _nearest_singular(zr, zi, sing_re, sing_im, n_sing,
                                           sing_sn)
            if dmin < eps_sing:
                if jmin == prev_jmin and baker_streak >= confirm_steps:
                    return (K_BAKER, T_FINITE, sing_re[jmin], sing_im[jmin],
                            jmin, 0, 0.0, 0.0, 0, n,
                            chordal_finite(pzr, pzi, zr, zi))
                return (K_SINGULAR_HIT, T_FINITE, sing_re[jmin],
                        sing_im[jmin], jmin, 0, 0.0, 0.0, 0, n, dmin)
            if jmin == prev_jmin and dmin < prev_dmin:
                baker_streak += 1
            else:
                baker_streak = 0
            if jmin == prev_jmin and dmin <= prev_dmin:
                noninc_streak += 1
            else:
                noninc_streak = 0
            prev_jmin, prev_dmin = jmin, dmin

        if cycles_enabled:
            p_hit = 0
            lim = p_max if n >= p_max else n
            for p in range(1, lim + 1):
                rp = wpos - p
                if rp < 0:
                    rp += p_max
                dr = zr - hist_re[rp]
                di = zi - hist_im[rp]
                if dr * dr + di * di < eps_c2:
                    if last_match[p] == n - 1:
                        p_hit = p
                        break
                    last_match[p] = n
            if p_hit > 0:
                p = p_hit
                if n_sing > 0 and dmin < capture_radius:
                    return (K_BAKER, T_FINITE, sing_re[jmin], sing_im[jmin],
                            jmin, 0, 0.0, 0.0, 0, n,
                            chordal_finite(pzr, pzi, zr, zi))
                mr, mi, ms = 1.0, 0.0, ST_FINITE
                ok = True
                for q in range(p):
                    if q == 0:
                        cr, ci = zr, zi
                    else:
                        rp = wpos - q
                        if rp < 0:
                            rp += p_max
                        cr = hist_re[rp]
                        ci = hist_im[rp]
                    dvr, dvi, dvs = eval_program(dops, dconsts, cr, ci)
                    if dvs != ST_FINITE:
                        ok = False
                        break
                    mr, mi, ms = cx_mul(mr, mi, ms, dvr, dvi, dvs)
                if ok and ms == ST_FINITE:
                    rp = wpos - p
                    if rp < 0:
                        rp += p_max
                    hr = hist_re[rp]
                    hi = hist_im[rp]
                    closure = chordal_finite(zr, zi, hr, hi)
                    d1r = mr - 1.0
                    if math.sqrt(d1r * d1r + mi * mi) < PARABOLIC_BAND:
                        return (K_PARABOLIC, T_FINITE, zr, zi, -1, p,
                                mr, mi, 1, n, closure)
                    if math.sqrt(mr * mr + mi * mi) < 1.0:
                        return (K_ATTRACTING, T_FINITE, zr, zi, -1, p,
                                mr, mi, 1, n, closure)
                cycles_enabled = False

        hist_re[wpos] = zr
        hist_im[wpos] = zi

        if m2 > prev_m2:
            inf_streak += 1
        else:
            inf_streak = 0
        if m2 > R2 and inf_streak >= confirm_steps:
            return (K_ESCAPE, T_INF, 0.0, 0.0, -1, 0, 0.0, 0.0, 0, n,
                    chordal_inf(zr, zi))

        if has_period:
            band = int(math.floor((zr * pre + zi * pim) / pnorm2 + 0.5))
            if out_band is not None:
                out_band[n] = band
            if band > band_prev:
                up_streak += 1
                down_streak = 0
            elif band < band_prev:
                down_streak += 1
                up_streak = 0
            else:
                up_streak = down_streak = 0
            band_prev = band
            dqr = (zr - pzr) - pre
            dqi = (zi - pzi) - pim
            dq = math.sqrt(dqr * dqr + dqi * dqi)
            if dq < prev_dq or dq == 0.0:
                quot_streak += 1
            else:
                quot_streak = 0
            prev_dq = dq
        prev_m2 = m2

    # max_iter reached without a decisive event; judge the tail behavior
    step_res = chordal_finite(pzr, pzi, zr, zi)
    if has_period and (up_streak >= slow_confirm or
                       down_streak >= slow_confirm) and \
            quot_streak >= slow_confirm:
        qr = zr - max_iter * pre
        qi = zi - max_iter * pim
        return (K_WANDERING, T_FINITE, qr, qi, -1, 0, 0.0, 0.0, 0,
                max_iter, prev_dq)
    if n_sing > 0 and baker_streak >= slow_confirm:
        return (K_BAKER, T_FINITE, sing_re[prev_jmin], sing_im[prev_jmin],
                prev_jmin, 0, 0.0, 0.0, 0, max_iter, step_res)
    if n_sing > 0 and prev_dmin < capture_radius and \
            noninc_streak >= slow_confirm:
        return (K_BAKER, T_FINITE, sing_re[prev_jmin], sing_im[prev_jmin],
                prev_jmin, 0, 0.0, 0.0, 0, max_iter, step_res)
    if inf_streak >= slow_confirm:
        return (K_ESCAPE, T_INF, 0.0, 0.0, -1, 0, 0.0, 0.0, 0, max_iter,
                chordal_inf(zr, zi))
    return (K_UNRESOLVED, T_NONE, 0.0, 0.0, -1, 0, 0.0, 0.0, 0, max_iter,
            step_res)


def classify_grid(fops, fconsts, dops, dconsts,
                  re_min, re_max, im_min, im_max, width, height,
                  sing_re, sing_im, n_sing,
                  max_iter, escape_radius, eps_sing, eps_cycle,
                  p_max, confirm_steps, slow_confirm, capture_radius,
                  has_period, pre, pim,
                  row_start, row_end,
                  out_kind, out_tclass, out_tre, out_tim, out_tsing,
                  out_iters, out_resid):
    """Classify pixel centers for rows [row_start, row_end)."""
    dx = (re_max - re_min) / width
    dy = (im_max - im_min) / height
    for i in range(row_start, row_end):
        zi0 = im_min + (i + 0.5) * dy
        for j in range(width):
            zr0 = re_min + (j + 0.5) * dx
            (kind, tclass, tre, tim, sidx, _per, _mr, _mi, _hm,
             iters, resid) = classify_point(
                fops, fconsts, dops, dconsts, zr0, zi0,
                sing_re, sing_im, n_sing,
                max_iter, escape_radius, eps_sing, eps_cycle,
                p_max, confirm_steps, slow_confirm, capture_radius,
                has_period, pre, pim)
            idx = i * width + j
            out_kind[idx] = kind
            out_tclass[idx] = tclass
            out_tre[idx] = tre
            out_tim[idx] = tim
            out_tsing[idx] = sidx
            out_iters[idx] = iters
            out_resid[idx] = resid
