"""Independent reference computations used only by the tests."""
from __future__ import annotations

from fdmethod.basic import expansion_value
from fdmethod.scalars import real_basis


def tail_by_substitution(phi, gamma, k2, mp):
    """Coefficients ``p = 1..M`` by direct back-substitution of the recurrence.

    For ``t = M-1, ..., 0``::

        (t+1)(t+2) a_{t+2} - 2(t+1) k^2 b_{t+1} = phi_t
        (t+1)(t+2) b_{t+2} + 2(t+1) a_{t+1}     = gamma_t
    """
    M = len(phi)
    a = [mp.zero] * (M + 2)
    b = [mp.zero] * (M + 2)
    for t in range(M - 1, -1, -1):
        b[t + 1] = ((t + 1) * (t + 2) * a[t + 2] - phi[t]) / (2 * (t + 1) * k2)
        a[t + 1] = (gamma[t] - (t + 1) * (t + 2) * b[t + 2]) / (2 * (t + 1))
    return a[: M + 1], b[: M + 1]


def integrate_layer(result, j: int):
    """Values of correction layer ``j >= 1`` at every mesh point by variation of parameters.

    Starts from the layer's own ``u(A)``, ``u'(A)``; on each interval::

        u(x)  = c(x-lo) u(lo) + s(x-lo) u'(lo) + int_lo^x s(x-t) F(t) dt
        u'(x) = -k^2 s(x-lo) u(lo) + c(x-lo) u'(lo) + int_lo^x c(x-t) F(t) dt

    with the source ``F`` evaluated pointwise and the integrals done by
    quadrature.  Agreement at later mesh points checks the ODE and the
    matching conditions together without touching the coefficient algebra.
    """
    mp = result.ctx.mp
    basic, mesh = result.basic, result.mesh
    layers = result.layers
    k2 = basic.k2

    def layer_val(s, i, x):
        return expansion_value(layers[s].a[i], layers[s].b[i], k2[i], x, mp)

    u = layer_val(j, 0, mesh.A)
    du = expansion_value(layers[j].a[0], layers[j].b[0], k2[0], mesh.A, mp, 1)
    values = [u]
    for i in range(mesh.N):
        lo, hi = mesh.interval(i)

        def F(t, i=i):
            src = (result.q(t) - result.qbar.values[i]) * layer_val(j - 1, i, t)
            for s in range(j):
                src -= layers[j - s].lam * layer_val(s, i, t)
            return src

        s_h, c_h = real_basis(k2[i], hi - lo, mp)
        iu = mp.quad(lambda t: real_basis(k2[i], hi - t, mp)[0] * F(t), [lo, hi])
        idu = mp.quad(lambda t: real_basis(k2[i], hi - t, mp)[1] * F(t), [lo, hi])
        u, du = c_h * u + s_h * du + iu, -k2[i] * s_h * u + c_h * du + idu
        values.append(u)
    return values
