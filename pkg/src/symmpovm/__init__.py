"""POVMs from orthonormal matrix bases, spherical-tensor POVMs on the
symmetric subspace of N qubits, their dilation to the full space, and
measurement utilities."""

__version__ = "0.1.0"

from .angmom import ExactCoeff, clebsch_gordan, wigner_D, wigner_small_d
from .dilate import (
    DickeIsometry,
    cg_unitary_two_qubits,
    dicke_isometry,
    dilate_element,
    dilate_set,
    symmetric_component,
)
from .matcore import EigenResult, hermitian_eigen, partial_transpose, unvec, vec
from .measure import (
    PauliDecomposition,
    born_probabilities,
    pauli_decompose,
    pauli_reconstruct,
    post_state,
    post_state_pure,
    ppt_check,
    sample_outcome,
)
from .povm import (
    BasisSet,
    PovmElement,
    PovmSet,
    basis_from_unitary,
    coalesce_degenerate,
    completeness_defect,
    elementary_basis,
    povm_from_basis,
    spherical_povm,
)
from .tensors import FanoParameters, fano_extract, fano_reconstruct, rotate_parameters, tau, tensor_basis
