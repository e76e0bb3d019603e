"""Homology lattices of cyclic spectral covers and their transvection monodromy.

Given parameters (n, l, g) the package builds the integral homology lattices of a
degree-n cyclic cover of a genus-g surface branched at n*l points, equips them
with their intersection forms and deck action, and classifies the group generated
by the associated symplectic transvections within the standard taxonomy of
skew-symmetric vanishing lattices (polarization type, Arf invariant of the
invariant quadratic, family tag).
"""

__version__ = "0.1.0"

from .lattice import (SpectralParams, PolarizedLattice, SpectralLatticeSystem,
                      build_system, pair_c, boundary_relation, prym_rank,
                      polarization_type, expected_polarization, mod2_nullspace_check,
                      cycle_class, loop_class)
from .quadratic import (F2Quadratic, q_from_basis_values, arf, count_zeros,
                        solve_invariant_quadratic, predicted_arf, UNDEFINED, ABSENT)
from .vanlat import (VanishingLatticeDescriptor, OrbitResult, DiagramSpec,
                     ClassifyResult, CapExceeded, classify, expected_descriptor,
                     orbit_closure_f2, verify_axioms, transvection_matrix,
                     e6_witness, canonical_diagram, delta_membership_z, gl_generators)
from .exterior import (ExteriorVector, alpha_form, exterior_action,
                       invariant_subspace, monodromy_invariant_subspace,
                       omega_power_identity)

__all__ = [
    "__version__",
    "SpectralParams", "PolarizedLattice", "SpectralLatticeSystem",
    "build_system", "pair_c", "boundary_relation", "prym_rank",
    "polarization_type", "expected_polarization", "mod2_nullspace_check",
    "cycle_class", "loop_class",
    "F2Quadratic", "q_from_basis_values", "arf", "count_zeros",
    "solve_invariant_quadratic", "predicted_arf", "UNDEFINED", "ABSENT",
    "VanishingLatticeDescriptor", "OrbitResult", "DiagramSpec", "ClassifyResult",
    "CapExceeded", "classify", "expected_descriptor", "orbit_closure_f2",
    "verify_axioms", "transvection_matrix", "e6_witness", "canonical_diagram",
    "delta_membership_z", "gl_generators",
    "ExteriorVector", "alpha_form", "exterior_action", "invariant_subspace",
    "monodromy_invariant_subspace", "omega_power_identity",
]
