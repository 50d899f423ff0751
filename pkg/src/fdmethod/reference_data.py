"""Published values for ``q(x) = -60 + 120 x`` on ``[0, 1]``.

Eigenvalues are quoted to 30 digits.  The tables give, per rank ``m``, the
error of the eigenvalue approximation and the residual norm, each rounded to
three significant digits.
"""

KNOWN_EXACT = {
    1: "-3.08815211843854844862886684381",
    2: "41.5266775137315677830945919694",
    3: "91.4591579961161898490753991651",
    4: "159.625216916146830891863813793",
}

RANKS = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20)

# zero base potential, one interval; (delta, omega) per rank for n = 1..4
ZERO_BASE = {
    1: [(13.0, 21.7), (13.0, 23.5), (2.84, 9.00), (2.84, 9.59), (1.76, 4.87), (1.76, 6.72),
        (1.50, 4.21), (1.50, 6.35), (1.48, 3.87), (1.48, 6.40), (1.59, 4.35), (4.16, 10.0)],
    2: [(2.05, 31.9), (2.05, 11.4), (2.66, 5.87), (2.66, 5.41), (1.80, 3.72), (1.80, 3.54),
        (1.51, 3.25), (1.51, 3.27), (1.48, 3.06), (1.48, 3.33), (1.59, 3.48), (4.16, 8.23)],
    3: [(2.63, 33.5), (2.63, 12.5), (0.174, 3.03), (0.174, 1.05), (3.14e-2, 2.74e-1),
        (3.14e-2, 1.10e-1), (1.11e-2, 3.67e-2), (1.11e-2, 2.22e-2), (1.81e-3, 4.52e-3),
        (1.81e-3, 3.75e-3), (7.10e-5, 4.26e-4), (5.29e-7, 4.42e-7)],
    4: [(1.71, 34.0), (1.71, 9.86), (7.77e-3, 2.33), (7.77e-3, 5.96e-1), (2.05e-3, 1.36e-1),
        (2.05e-3, 3.7e-2), (2.85e-5, 8.43e-3), (2.85e-5, 2.34e-3), (1.37e-5, 5.45e-4),
        (1.37e-5, 1.50e-4), (7.51e-7, 3.46e-5), (1.21e-12, 2.93e-11)],
}

# endpoint-average base potential on N uniform intervals; keyed by (N, n)
AVERAGE_BASE = {
    (2, 1): [(2.77, 15.2), (1.20, 1.74), (3.64e-2, 0.115), (6.28e-3, 1.31e-2), (8.26e-4, 1.81e-3),
             (4.41e-5, 2.13e-4), (1.81e-5, 3.27e-5), (4.28e-7, 4.51e-6), (3.55e-7, 7.10e-7),
             (3.62e-8, 1.04e-7), (5.50e-9, 1.69e-8), (1.08e-16, 2.20e-16)],
    (3, 1): [(1.11, 11.3), (0.278, 0.375), (2.52e-3, 1.33e-2), (1.29e-4, 5.35e-4), (4.44e-6, 2.03e-5),
             (2.78e-8, 1.17e-6), (2.46e-9, 3.38e-8), (3.54e-11, 2.21e-9), (1.21e-11, 1.38e-10),
             (7.19e-13, 5.55e-12), (2.35e-14, 4.44e-13), (2.23e-26, 1.96e-25)],
    (2, 2): [(6.61, 15.8), (7.27e-1, 1.65), (5.39e-2, 0.312), (1.02e-2, 5.51e-2), (1.68e-3, 6.98e-3),
             (1.35e-4, 6.53e-4), (2.32e-5, 3.44e-4), (1.47e-5, 1.13e-4), (4.31e-6, 2.49e-5),
             (8.19e-7, 3.45e-6), (7.00e-8, 5.04e-7), (1.74e-14, 7.81e-13)],
    (3, 2): [(1.20, 10.7), (3.01e-1, 4.61e-1), (2.13e-3, 1.43e-2), (3.63e-4, 1.16e-3), (9.71e-6, 6.81e-5),
             (1.22e-6, 3.99e-6), (7.22e-8, 2.57e-7), (3.03e-9, 1.33e-8), (3.28e-10, 8.86e-10),
             (1.04e-11, 5.06e-11), (1.79e-12, 4.29e-12), (6.36e-24, 1.67e-23)],
}
