"""Local zero spacing of orthogonal polynomials at algebraic singularities.

Submodules
----------
specfun         Bessel J of real order, including the entire form x^-a J_a(x)
bessel_zeros    zeros j_k(a, c, d) of c J_a + d J_{a+1}
measure         generalized Jacobi measures and their recurrences
jacobi_spectra  zeros of p_n from the Jacobi matrix
asymptotics     phases, limiting constants and leading-order pi_n asymptotics
verify          verification suites
cli             command-line front end
"""

__version__ = "0.1.0"
