from array import array

import pytest

from permbinom import kernels
from permbinom.gf import quadratic_extension
from permbinom.hermite import _kernel_terms

BACKENDS = kernels.backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
@pytest.mark.parametrize("q", [4, 9, 19, 27, 29])
def test_backends_agree(q):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    ctx = quadratic_extension(q)
    t = ctx.tables
    mod = array("q", ctx.modulus.coeffs)
    gen = array("q", ctx.canonical_generator.coeffs)
    assert list(py.build_exp_table(ctx.p, ctx.d, mod, gen, t.order)) == list(
        cy.build_exp_table(ctx.p, ctx.d, mod, gen, t.order))
    e = 5 * (q - 1) + 1
    for la in range(0, t.order, max(1, t.order // 40)):
        assert py.is_permutation_log(t.exp, t.zech, la, e, t.order) == cy.is_permutation_log(
            t.exp, t.zech, la, e, t.order)
        for s in (1, q, q * q - 2):
            assert py.power_sum_log(t.zech, la, e, s, t.order) == cy.power_sum_log(t.zech, la, e, s, t.order)
        for alpha in {0, min(4, q - 1), q // 2}:
            cl, ex, _ = _kernel_terms(q, alpha, 5)
            assert py.lambda_sum_log(t.zech, cl, ex, la, t.order) == cy.lambda_sum_log(t.zech, cl, ex, la, t.order)


def test_env_forces_python_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, PERMBINOM_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", "from permbinom import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
