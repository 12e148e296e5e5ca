"""Numerical verification laboratory for generalized Calderon-Zygmund and
flag kernels of arbitrary order on graded homogeneous groups.

Subpackages:
  graded    -- dilations, homogeneous/partial norms, multiindices
  calculus  -- exact order arithmetic for the F / F0 / S classes
  kernels   -- analytic kernel bank, mollifiers, test functions, pairings
  spectral  -- anisotropic grids, continuous-convention transforms, decay fits
  groupconv -- Campbell-Hausdorff group laws, group convolution, compositions
  verify    -- pass/fail checkers turning the exponent laws into reports
  cli       -- config-driven batch front end
"""

__version__ = "0.1.0"
