# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled orbit kernel.

Line-for-line transliteration of ``_ref.py``; both must stay in sync so
results are bit-identical across backends. See _ref.py for commentary.
"""

from libc.math cimport cos, cosh, exp, floor, sin, sinh, sqrt

import numpy as np

BACKEND = "compiled"

cdef double INF = float("inf")

cdef int ST_FINITE = 0
cdef int ST_INF = 1
cdef int ST_UNDEF = 2

cdef double EXP_OVERFLOW = 700.0

cdef int K_UNRESOLVED = 0
cdef int K_ESCAPE = 1
cdef int K_BAKER = 2
cdef int K_ATTRACTING = 3
cdef int K_PARABOLIC = 4
cdef int K_WANDERING = 5
cdef int K_SINGULAR_HIT = 6

cdef int T_NONE = 0
cdef int T_FINITE = 1
cdef int T_INF = 2

cdef double PARABOLIC_BAND = 1e-3

cdef int OP_PUSH_Z = 0
cdef int OP_PUSH_CONST = 1
cdef int OP_ADD = 2
cdef int OP_SUB = 3
cdef int OP_MUL = 4
cdef int OP_DIV = 5
cdef int OP_NEG = 6
cdef int OP_POWI = 7
cdef int OP_EXP = 8
cdef int OP_SIN = 9
cdef int OP_COS = 10

DEF MAX_STACK = 64
DEF MAX_PMAX = 8
DEF MAX_SING = 1024


cdef struct CV:
    double re
    double im
    int st


cdef inline bint _isnan(double x) noexcept nogil:
    return x != x


cdef inline bint _isinf(double x) noexcept nogil:
    return x == INF or x == -INF


cdef inline CV _guard2(double re, double im) noexcept nogil:
    cdef CV r
    if _isnan(re) or _isnan(im):
        r.re = 0.0; r.im = 0.0; r.st = ST_UNDEF
    elif _isinf(re) or _isinf(im):
        r.re = 0.0; r.im = 0.0; r.st = ST_INF
    else:
        r.re = re; r.im = im; r.st = ST_FINITE
    return r


cdef inline CV _mk(double re, double im, int st) noexcept nogil:
    cdef CV r
    r.re = re; r.im = im; r.st = st
    return r


cdef inline CV cx_add(CV a, CV b) noexcept nogil:
    if a.st == ST_UNDEF or b.st == ST_UNDEF:
        return _mk(0.0, 0.0, ST_UNDEF)
    if a.st == ST_INF or b.st == ST_INF:
        if a.st == ST_INF and b.st == ST_INF:
            return _mk(0.0, 0.0, ST_UNDEF)
        return _mk(0.0, 0.0, ST_INF)
    return _guard2(a.re + b.re, a.im + b.im)


cdef inline CV cx_sub(CV a, CV b) noexcept nogil:
    if a.st == ST_UNDEF or b.st == ST_UNDEF:
        return _mk(0.0, 0.0, ST_UNDEF)
    if a.st == ST_INF or b.st == ST_INF:
        if a.st == ST_INF and b.st == ST_INF:
            return _mk(0.0, 0.0, ST_UNDEF)
        return _mk(0.0, 0.0, ST_INF)
    return _guard2(a.re - b.re, a.im - b.im)


cdef inline CV cx_mul(CV a, CV b) noexcept nogil:
    cdef double re, im
    if a.st == ST_UNDEF or b.st == ST_UNDEF:
        return _mk(0.0, 0.0, ST_UNDEF)
    if a.st == ST_INF or b.st == ST_INF:
        if (a.st == ST_FINITE and a.re == 0.0 and a.im == 0.0) or \
           (b.st == ST_FINITE and b.re == 0.0 and b.im == 0.0):
            return _mk(0.0, 0.0, ST_UNDEF)
        return _mk(0.0, 0.0, ST_INF)
    re = a.re * b.re - a.im * b.im
    im = a.re * b.im + a.im * b.re
    if _isnan(re) or _isnan(im):
        return _mk(0.0, 0.0, ST_INF)
    return _guard2(re, im)


cdef inline CV cx_div(CV a, CV b) noexcept nogil:
    cdef double d
    if a.st == ST_UNDEF or b.st == ST_UNDEF:
        return _mk(0.0, 0.0, ST_UNDEF)
    if a.st == ST_INF and b.st == ST_INF:
        return _mk(0.0, 0.0, ST_UNDEF)
    if a.st == ST_INF:
        return _mk(0.0, 0.0, ST_INF)
    if b.st == ST_INF:
        return _mk(0.0, 0.0, ST_FINITE)
    d = b.re * b.re + b.im * b.im
    if d == 0.0:
        if a.re == 0.0 and a.im == 0.0:
            return _mk(0.0, 0.0, ST_UNDEF)
        return _mk(0.0, 0.0, ST_INF)
    if _isinf(d):
        return _mk(0.0, 0.0, ST_FINITE)
    return _guard2((a.re * b.re + a.im * b.im) / d,
                   (a.im * b.re - a.re * b.im) / d)


cdef inline CV cx_neg(CV a) noexcept nogil:
    if a.st != ST_FINITE:
        return _mk(0.0, 0.0, a.st)
    return _mk(-a.re, -a.im, ST_FINITE)


cdef inline CV cx_exp(CV a) noexcept nogil:
    cdef double m
    if a.st == ST_UNDEF or a.st == ST_INF:
        return _mk(0.0, 0.0, ST_UNDEF)
    if a.re > EXP_OVERFLOW:
        return _mk(0.0, 0.0, ST_INF)
    m = exp(a.re)
    return _guard2(m * cos(a.im), m * sin(a.im))


cdef inline CV cx_sin(CV a) noexcept nogil:
    if a.st == ST_UNDEF or a.st == ST_INF:
        return _mk(0.0, 0.0, ST_UNDEF)
    return _guard2(sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im))


cdef inline CV cx_cos(CV a) noexcept nogil:
    if a.st == ST_UNDEF or a.st == ST_INF:
        return _mk(0.0, 0.0, ST_UNDEF)
    return _guard2(cos(a.re) * cosh(a.im), -sin(a.re) * sinh(a.im))


cdef inline CV cx_powi(CV a, int k) noexcept nogil:
    cdef CV w = _mk(1.0, 0.0, ST_FINITE)
    cdef int i
    cdef int kk = k if k >= 0 else -k
    for i in range(kk):
        w = cx_mul(w, a)
    if k < 0:
        return cx_div(_mk(1.0, 0.0, ST_FINITE), w)
    return w


cdef inline CV eval_prog(const int* ops, int n_ops, const double* consts,
                         double zr, double zi, CV* stack) noexcept nogil:
    cdef int idx, code, arg, sp = 0
    cdef CV a, b
    for idx in range(n_ops):
        code = ops[2 * idx]
        arg = ops[2 * idx + 1]
        if code == OP_PUSH_Z:
            stack[sp] = _mk(zr, zi, ST_FINITE); sp += 1
        elif code == OP_PUSH_CONST:
            stack[sp] = _mk(consts[2 * arg], consts[2 * arg + 1], ST_FINITE)
            sp += 1
        elif code == OP_ADD:
            sp -= 1; b = stack[sp]; a = stack[sp - 1]
            stack[sp - 1] = cx_add(a, b)
        elif code == OP_SUB:
            sp -= 1; b = stack[sp]; a = stack[sp - 1]
            stack[sp - 1] = cx_sub(a, b)
        elif code == OP_MUL:
            sp -= 1; b = stack[sp]; a = stack[sp - 1]
            stack[sp - 1] = cx_mul(a, b)
        elif code == OP_DIV:
            sp -= 1; b = stack[sp]; a = stack[sp - 1]
            stack[sp - 1] = cx_div(a, b)
        elif code == OP_NEG:
            stack[sp - 1] = cx_neg(stack[sp - 1])
        elif code == OP_POWI:
            stack[sp - 1] = cx_powi(stack[sp - 1], arg)
        elif code == OP_EXP:
            stack[sp - 1] = cx_exp(stack[sp - 1])
        elif code == OP_SIN:
            stack[sp - 1] = cx_sin(stack[sp - 1])
        elif code == OP_COS:
            stack[sp - 1] = cx_cos(stack[sp - 1])
    return stack[sp - 1]


cdef inline double sphere_norm(double re, double im) noexcept nogil:
    cdef double m2 = re * re + im * im
    if m2 > 1e300 or _isinf(m2):
        return INF
    return sqrt(1.0 + m2)


cdef inline double chordal_finite(double ar, double ai,
                                  double br, double bi) noexcept nogil:
    cdef double sa = sphere_norm(ar, ai)
    cdef double sb = sphere_norm(br, bi)
    cdef double dr, di
    if _isinf(sa) and _isinf(sb):
        return 0.0
    if _isinf(sa):
        return 2.0 / sb
    if _isinf(sb):
        return 2.0 / sa
    dr = ar - br
    di = ai - bi
    return 2.0 * sqrt(dr * dr + di * di) / (sa * sb)


cdef inline double chordal_inf(double re, double im) noexcept nogil:
    cdef double s = sphere_norm(re, im)
    return 0.0 if _isinf(s) else 2.0 / s


cdef inline int _nearest_singular(double zr, double zi,
                                  const double* sing_re,
                                  const double* sing_im,
                                  const double* sing_sn, int n_sing,
                                  double* dmin_out) noexcept nogil:
    # cached sphere norms of the singular points; per-point arithmetic is
    # identical to chordal_finite with sphere_norm(z) hoisted
    cdef int j, jmin = -1
    cdef double d, dmin = INF, dr, di, sb
    cdef double sa = sphere_norm(zr, zi)
    for j in range(n_sing):
        sb = sing_sn[j]
        if _isinf(sa):
            d = 0.0 if _isinf(sb) else 2.0 / sb
        elif _isinf(sb):
            d = 2.0 / sa
        else:
            dr = zr - sing_re[j]
            di = zi - sing_im[j]
            d = 2.0 * sqrt(dr * dr + di * di) / (sa * sb)
        if d < dmin:
            dmin = d
            jmin = j
    dmin_out[0] = dmin
    return jmin


cdef int classify_core(const int* fops, int n_fops, const double* fconsts,
                       const int* dops, int n_dops, const double* dconsts,
                       double sr, double si,
                       const double* sing_re, const double* sing_im,
                       int n_sing,
                       int max_iter, double escape_radius, double eps_sing,
                       double eps_cycle, int p_max, int confirm_steps,
                       int slow_confirm, double capture_radius,
                       int has_period, double pre, double pim,
                       long* out_band, int use_band,
                       double* o_tre, double* o_tim, int* o_tclass,
                       int* o_sidx, int* o_period, double* o_mre,
                       double* o_mim, int* o_hasmult, int* o_iters,
                       double* o_resid) noexcept nogil:
    cdef CV stack[MAX_STACK]
    cdef double hist_re[MAX_PMAX]
    cdef double hist_im[MAX_PMAX]
    cdef long last_match[MAX_PMAX + 1]
    cdef double sing_sn[MAX_SING]
    cdef double R2 = escape_radius * escape_radius
    cdef double eps_c2 = eps_cycle * eps_cycle
    cdef double zr = sr, zi = si
    cdef double dmin, prev_dmin, step_res, m2, prev_m2
    cdef int jmin, prev_jmin, wpos, rp
    cdef int baker_streak = 0, noninc_streak = 0, inf_streak = 0
    cdef int cycles_enabled = 1
    cdef double pnorm2 = 1.0
    cdef long band_prev = 0, band
    cdef int up_streak = 0, down_streak = 0, quot_streak = 0
    cdef double prev_dq = INF, dq, dqr, dqi
    cdef int n, p, q, lim, p_hit, ok
    cdef CV w, dv, mult
    cdef double pzr, pzi, hr, hi, dr, di, cr, ci, d1r, closure
    cdef double qr, qi

    # defaults
    o_tre[0] = 0.0; o_tim[0] = 0.0; o_tclass[0] = T_NONE; o_sidx[0] = -1
    o_period[0] = 0; o_mre[0] = 0.0; o_mim[0] = 0.0; o_hasmult[0] = 0
    o_iters[0] = 0; o_resid[0] = 0.0

    for p in range(n_sing):
        sing_sn[p] = sphere_norm(sing_re[p], sing_im[p])
    jmin = _nearest_singular(zr, zi, sing_re, sing_im, sing_sn, n_sing,
                             &dmin)
    if has_period and use_band:
        pnorm2 = pre * pre + pim * pim
        out_band[0] = <long>floor((zr * pre + zi * pim) / pnorm2 + 0.5)
    if n_sing > 0 and dmin < eps_sing:
        o_tclass[0] = T_FINITE; o_tre[0] = sing_re[jmin]
        o_tim[0] = sing_im[jmin]; o_sidx[0] = jmin
        o_iters[0] = 0; o_resid[0] = dmin
        return K_SINGULAR_HIT

    prev_jmin = jmin; prev_dmin = dmin
    prev_m2 = zr * zr + zi * zi

    for p in range(p_max):
        hist_re[p] = 0.0
        hist_im[p] = 0.0
    hist_re[0] = zr
    hist_im[0] = zi
    for p in range(p_max + 1):
        last_match[p] = -2

    if has_period:
        pnorm2 = pre * pre + pim * pim
        band_prev = <long>floor((sr * pre + si * pim) / pnorm2 + 0.5)

    pzr = zr; pzi = zi
    wpos = 0  # ring position of z_n in hist (n mod p_max)
    for n in range(1, max_iter + 1):
        w = eval_prog(fops, n_fops, fconsts, zr, zi, stack)
        if w.st == ST_UNDEF:
            o_iters[0] = n; o_resid[0] = 0.0
            return K_SINGULAR_HIT
        if w.st == ST_INF:
            o_tclass[0] = T_INF; o_iters[0] = n; o_resid[0] = 0.0
            return K_ESCAPE
        pzr = zr; pzi = zi
        zr = w.re; zi = w.im
        m2 = zr * zr + zi * zi
        wpos += 1
        if wpos == p_max:
            wpos = 0

        if n_sing > 0:
            jmin = _nearest_singular(zr, zi, sing_re, sing_im, sing_sn,
                                     n_sing, &dmin)
            if dmin < eps_sing:
                o_tclass[0] = T_FINITE; o_tre[0] = sing_re[jmin]
                o_tim[0] = sing_im[jmin]; o_sidx[0] = jmin
                o_iters[0] = n
                if jmin == prev_jmin and baker_streak >= confirm_steps:
                    o_resid[0] = chordal_finite(pzr, pzi, zr, zi)
                    return K_BAKER
                o_resid[0] = dmin
                return K_SINGULAR_HIT
            if jmin == prev_jmin and dmin < prev_dmin:
                baker_streak += 1
            else:
                baker_streak = 0
            if jmin == prev_jmin and dmin <= prev_dmin:
                noninc_streak += 1
            else:
                noninc_streak = 0
            prev_jmin = jmin; prev_dmin = dmin

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
                    o_tclass[0] = T_FINITE; o_tre[0] = sing_re[jmin]
                    o_tim[0] = sing_im[jmin]; o_sidx[0] = jmin
                    o_iters[0] = n
                    o_resid[0] = chordal_finite(pzr, pzi, zr, zi)
                    return K_BAKER
                mult = _mk(1.0, 0.0, ST_FINITE)
                ok = 1
                for q in range(p):
                    if q == 0:
                        cr = zr; ci = zi
                    else:
                        rp = wpos - q
                        if rp < 0:
                            rp += p_max
                        cr = hist_re[rp]
                        ci = hist_im[rp]
                    dv = eval_prog(dops, n_dops, dconsts, cr, ci, stack)
                    if dv.st != ST_FINITE:
                        ok = 0
                        break
                    mult = cx_mul(mult, dv)
                if ok and mult.st == ST_FINITE:
                    rp = wpos - p
                    if rp < 0:
                        rp += p_max
                    hr = hist_re[rp]
                    hi = hist_im[rp]
                    closure = chordal_finite(zr, zi, hr, hi)
                    d1r = mult.re - 1.0
                    if sqrt(d1r * d1r + mult.im * mult.im) < PARABOLIC_BAND:
                        o_tclass[0] = T_FINITE; o_tre[0] = zr; o_tim[0] = zi
                        o_period[0] = p; o_mre[0] = mult.re
                        o_mim[0] = mult.im; o_hasmult[0] = 1
                        o_iters[0] = n; o_resid[0] = closure
                        return K_PARABOLIC
                    if sqrt(mult.re * mult.re + mult.im * mult.im) < 1.0:
                        o_tclass[0] = T_FINITE; o_tre[0] = zr; o_tim[0] = zi
                        o_period[0] = p; o_mre[0] = mult.re
                        o_mim[0] = mult.im; o_hasmult[0] = 1
                        o_iters[0] = n; o_resid[0] = closure
                        return K_ATTRACTING
                cycles_enabled = 0

        hist_re[wpos] = zr
        hist_im[wpos] = zi

        if m2 > prev_m2:
            inf_streak += 1
        else:
            inf_streak = 0
        if m2 > R2 and inf_streak >= confirm_steps:
            o_tclass[0] = T_INF; o_iters[0] = n
            o_resid[0] = chordal_inf(zr, zi)
            return K_ESCAPE

        if has_period:
            band = <long>floor((zr * pre + zi * pim) / pnorm2 + 0.5)
            if use_band:
                out_band[n] = band
            if band > band_prev:
                up_streak += 1
                down_streak = 0
            elif band < band_prev:
                down_streak += 1
                up_streak = 0
            else:
                up_streak = 0
                down_streak = 0
            band_prev = band
            dqr = (zr - pzr) - pre
            dqi = (zi - pzi) - pim
            dq = sqrt(dqr * dqr + dqi * dqi)
            if dq < prev_dq or dq == 0.0:
                quot_streak += 1
            else:
                quot_streak = 0
            prev_dq = dq
        prev_m2 = m2

    step_res = chordal_finite(pzr, pzi, zr, zi)
    if has_period and (up_streak >= slow_confirm or
                       down_streak >= slow_confirm) and \
            quot_streak >= slow_confirm:
        qr = zr - max_iter * pre
        qi = zi - max_iter * pim
        o_tclass[0] = T_FINITE; o_tre[0] = qr; o_tim[0] = qi
        o_iters[0] = max_iter; o_resid[0] = prev_dq
        return K_WANDERING
    if n_sing > 0 and baker_streak >= slow_confirm:
        o_tclass[0] = T_FINITE; o_tre[0] = sing_re[prev_jmin]
        o_tim[0] = sing_im[prev_jmin]; o_sidx[0] = prev_jmin
        o_iters[0] = max_iter; o_resid[0] = step_res
        return K_BAKER
    if n_sing > 0 and prev_dmin < capture_radius and \
            noninc_streak >= slow_confirm:
        o_tclass[0] = T_FINITE; o_tre[0] = sing_re[prev_jmin]
        o_tim[0] = sing_im[prev_jmin]; o_sidx[0] = prev_jmin
        o_iters[0] = max_iter; o_resid[0] = step_res
        return K_BAKER
    if inf_streak >= slow_confirm:
        o_tclass[0] = T_INF; o_iters[0] = max_iter
        o_resid[0] = chordal_inf(zr, zi)
        return K_ESCAPE
    o_iters[0] = max_iter; o_resid[0] = step_res
    return K_UNRESOLVED


def classify_point(fops, fconsts, dops, dconsts, sr, si,
                   sing_re, sing_im, n_sing,
                   max_iter, escape_radius, eps_sing, eps_cycle,
                   p_max, confirm_steps, slow_confirm, capture_radius,
                   has_period, pre, pim, out_band=None):
    """Python-facing single-seed classification; see _ref.classify_point."""
    cdef int[:, :] fo = np.ascontiguousarray(fops, dtype=np.int32)
    cdef double[:, :] fc = np.ascontiguousarray(
        fconsts, dtype=np.float64).reshape(-1, 2)
    cdef int[:, :] do = np.ascontiguousarray(dops, dtype=np.int32)
    cdef double[:, :] dc = np.ascontiguousarray(
        dconsts, dtype=np.float64).reshape(-1, 2)
    cdef double[:] s_re = np.ascontiguousarray(sing_re, dtype=np.float64)
    cdef double[:] s_im = np.ascontiguousarray(sing_im, dtype=np.float64)
    cdef int ns = int(n_sing)
    if ns > 1024:
        raise ValueError("singular set too large for compiled kernel")
    cdef const double* p_sre = &s_re[0] if ns > 0 else NULL
    cdef const double* p_sim = &s_im[0] if ns > 0 else NULL
    cdef long[:] band_view
    cdef long* band_ptr = NULL
    cdef int use_band = 0
    if out_band is not None:
        band_view = out_band
        if band_view.shape[0] > 0:
            band_ptr = &band_view[0]
            use_band = 1
    cdef double o_tre = 0, o_tim = 0, o_mre = 0, o_mim = 0, o_resid = 0
    cdef int o_tclass = 0, o_sidx = -1, o_period = 0, o_hasmult = 0
    cdef int o_iters = 0
    cdef int kind
    kind = classify_core(&fo[0, 0], fo.shape[0], &fc[0, 0],
                         &do[0, 0], do.shape[0], &dc[0, 0],
                         float(sr), float(si), p_sre, p_sim, ns,
                         int(max_iter), float(escape_radius),
                         float(eps_sing), float(eps_cycle), int(p_max),
                         int(confirm_steps), int(slow_confirm),
                         float(capture_radius), int(has_period),
                         float(pre), float(pim), band_ptr, use_band,
                         &o_tre, &o_tim, &o_tclass, &o_sidx, &o_period,
                         &o_mre, &o_mim, &o_hasmult, &o_iters, &o_resid)
    return (kind, o_tclass, o_tre, o_tim, o_sidx, o_period, o_mre, o_mim,
            o_hasmult, o_iters, o_resid)


def classify_grid(fops, fconsts, dops, dconsts,
                  re_min, re_max, im_min, im_max, width, height,
                  sing_re, sing_im, n_sing,
                  max_iter, escape_radius, eps_sing, eps_cycle,
                  p_max, confirm_steps, slow_confirm, capture_radius,
                  has_period, pre, pim,
                  row_start, row_end,
                  out_kind, out_tclass, out_tre, out_tim, out_tsing,
                  out_iters, out_resid):
    """Classify pixel centers for rows [row_start, row_end); nogil inside,
    so concurrent calls on disjoint row ranges parallelize."""
    cdef int[:, :] fo = np.ascontiguousarray(fops, dtype=np.int32)
    cdef double[:, :] fc = np.ascontiguousarray(
        fconsts, dtype=np.float64).reshape(-1, 2)
    cdef int[:, :] do = np.ascontiguousarray(dops, dtype=np.int32)
    cdef double[:, :] dc = np.ascontiguousarray(
        dconsts, dtype=np.float64).reshape(-1, 2)
    cdef double[:] s_re = np.ascontiguousarray(sing_re, dtype=np.float64)
    cdef double[:] s_im = np.ascontiguousarray(sing_im, dtype=np.float64)
    cdef unsigned char[:] v_kind = out_kind
    cdef signed char[:] v_tclass = out_tclass
    cdef double[:] v_tre = out_tre
    cdef double[:] v_tim = out_tim
    cdef int[:] v_tsing = out_tsing
    cdef int[:] v_iters = out_iters
    cdef double[:] v_resid = out_resid

    cdef const int* p_fo = &fo[0, 0]
    cdef int n_fo = fo.shape[0]
    cdef const double* p_fc = &fc[0, 0]
    cdef const int* p_do = &do[0, 0]
    cdef int n_do = do.shape[0]
    cdef const double* p_dc = &dc[0, 0]
    cdef int c_ns = int(n_sing)
    if c_ns > 1024:
        raise ValueError("singular set too large for compiled kernel")
    cdef const double* p_sre = &s_re[0] if c_ns > 0 else NULL
    cdef const double* p_sim = &s_im[0] if c_ns > 0 else NULL

    cdef double c_remin = re_min, c_remax = re_max
    cdef double c_immin = im_min, c_immax = im_max
    cdef int c_w = width, c_h = height
    cdef int c_maxit = max_iter
    cdef double c_escape = escape_radius, c_epss = eps_sing
    cdef double c_epsc = eps_cycle, c_capture = capture_radius
    cdef int c_pmax = p_max, c_confirm = confirm_steps
    cdef int c_slow = slow_confirm, c_hasp = has_period
    cdef double c_pre = pre, c_pim = pim
    cdef int r0 = row_start, r1 = row_end

    cdef double dx = (c_remax - c_remin) / c_w
    cdef double dy = (c_immax - c_immin) / c_h
    cdef int i, j, kind
    cdef long idx
    cdef double zr0, zi0
    cdef double o_tre, o_tim, o_mre, o_mim, o_resid
    cdef int o_tclass, o_sidx, o_period, o_hasmult, o_iters

    with nogil:
        for i in range(r0, r1):
            zi0 = c_immin + (i + 0.5) * dy
            for j in range(c_w):
                zr0 = c_remin + (j + 0.5) * dx
                kind = classify_core(
                    p_fo, n_fo, p_fc, p_do, n_do, p_dc, zr0, zi0,
                    p_sre, p_sim, c_ns,
                    c_maxit, c_escape, c_epss, c_epsc, c_pmax, c_confirm,
                    c_slow, c_capture, c_hasp, c_pre, c_pim, NULL, 0,
                    &o_tre, &o_tim, &o_tclass, &o_sidx, &o_period,
                    &o_mre, &o_mim, &o_hasmult, &o_iters, &o_resid)
                idx = <long>i * c_w + j
                v_kind[idx] = <unsigned char>kind
                v_tclass[idx] = <signed char>o_tclass
                v_tre[idx] = o_tre
                v_tim[idx] = o_tim
                v_tsing[idx] = o_sidx
                v_iters[idx] = o_iters
                v_resid[idx] = o_resid
