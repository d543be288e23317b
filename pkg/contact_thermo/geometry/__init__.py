"""Contact geometry of simple thermodynamic phase spaces."""

from .brackets import (
    bracket,
    bracket_field,
    liouville_derivative,
    single_generator_rate,
)
from .contact import (
    bivector_sharp,
    contact_form,
    contact_form_eval,
    contact_structure_matrix,
    directional_derivative,
    evolution_vf,
    hamiltonian_vf,
    liouville_vf,
    phase_dimension,
    project,
    reeb,
)

__all__ = [
    "bracket",
    "bracket_field",
    "liouville_derivative",
    "single_generator_rate",
    "bivector_sharp",
    "contact_form",
    "contact_form_eval",
    "contact_structure_matrix",
    "directional_derivative",
    "evolution_vf",
    "hamiltonian_vf",
    "liouville_vf",
    "phase_dimension",
    "project",
    "reeb",
]
