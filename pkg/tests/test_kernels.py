"""Backend parity: the compiled kernel must match the pure-Python one
bit for bit, on single orbits and on whole grids."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from dynlab import kernel
from dynlab.fndef import fn_from_source
from dynlab.orbits import OrbitConfig, PreparedFn
from dynlab.singular import Rect, singular_set

HAS_COMPILED = "compiled" in kernel.backends()

GRID_CASES = [
    ("z + exp(-z)", Rect(-2, 10, -3 * math.pi, 3 * math.pi), None),
    ("z + exp(1/sin(z))", Rect(-4 * math.pi, 4 * math.pi, -8, 8),
     2 * math.pi),
    ("z + exp(1/z^2)", Rect(-2, 2, -2, 2), None),
    ("z - 1 + exp(-z)", Rect(-3, 3, -7, 14), None),
]


def _prepared(src, window, period):
    f = fn_from_source(src, period=period, validate_period=False)
    sing = singular_set(f, window)
    return PreparedFn(f, sing if len(sing.points) else None,
                      OrbitConfig(max_iter=150),
                      period=complex(period) if period else None)


def _classify(mod, prep, z, sing_re=None, sing_im=None):
    sr = prep.sing_re if sing_re is None else sing_re
    si = prep.sing_im if sing_im is None else sing_im
    ka = prep.kernel_args()
    band = np.zeros(ka["max_iter"] + 1, dtype=np.int64)
    res = mod.classify_point(
        prep.body.ops, prep.body.consts, prep.deriv.ops, prep.deriv.consts,
        z.real, z.imag, sr, si, len(sr), out_band=band, **ka)
    return res, band.tobytes()


def test_backend_selected():
    assert kernel.BACKEND in ("python", "compiled")


def test_python_backend_always_available():
    assert "python" in kernel.backends()


def test_force_python_env_var():
    code = ("import dynlab.kernel as k; print(k.BACKEND)")
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={**os.environ, "DYNLAB_FORCE_PYTHON_KERNEL": "1"},
        capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel not built")
@pytest.mark.parametrize("src,window,period", GRID_CASES)
def test_point_parity(src, window, period):
    mods = kernel.backends()
    prep = _prepared(src, window, period)
    for z in (complex(5.0, 0.3), complex(-0.4, 0.0), complex(2.0, 3.1),
              complex(-6.75, -0.09876543209876587)):
        outs = {name: _classify(mod, prep, z) for name, mod in mods.items()}
        assert outs["python"] == outs["compiled"]


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel not built")
@pytest.mark.parametrize("src,window,period", GRID_CASES)
def test_grid_parity(src, window, period):
    mods = kernel.backends()
    prep = _prepared(src, window, period)
    w, h = 48, 40
    n = w * h
    ka = prep.kernel_args()
    results = {}
    for name, mod in mods.items():
        out = dict(
            out_kind=np.zeros(n, np.uint8), out_tclass=np.zeros(n, np.int8),
            out_tre=np.zeros(n), out_tim=np.zeros(n),
            out_tsing=np.zeros(n, np.int32), out_iters=np.zeros(n, np.int32),
            out_resid=np.zeros(n))
        mod.classify_grid(prep.body.ops, prep.body.consts,
                          prep.deriv.ops, prep.deriv.consts,
                          window.re_min, window.re_max,
                          window.im_min, window.im_max, w, h,
                          prep.sing_re, prep.sing_im, len(prep.sing_re),
                          ka["max_iter"], ka["escape_radius"],
                          ka["eps_sing"], ka["eps_cycle"], ka["p_max"],
                          ka["confirm_steps"], ka["slow_confirm"],
                          ka["capture_radius"], ka["has_period"],
                          ka["pre"], ka["pim"], 0, h, **out)
        results[name] = out
    for key in results["python"]:
        assert np.array_equal(results["python"][key],
                              results["compiled"][key]), key


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel not built")
def test_compiled_singular_capacity_limit():
    prep = _prepared(*GRID_CASES[1])
    big = np.zeros(2000)
    with pytest.raises(ValueError):
        _classify(kernel.backends()["compiled"], prep, 1 + 1j,
                  sing_re=big, sing_im=big)
