"""Three identical two-level atoms resonantly coupled to one cavity mode.

The closed-form evolution in the symmetric Dicke sector, reduced atomic
states, inversions, entanglement measures and the Husimi Q-function.
"""

from .dynamics import (
    PRESETS,
    AtomicInitState,
    CoherentField,
    SymmetricWavefunction,
    coherent_amplitudes,
    evolution_block,
    evolve,
    initial_amplitudes,
    rabi_params,
)
from .entanglement import (
    concurrence,
    entanglement_sample,
    negativity,
    residual_negativity,
    tangle_decomposition,
)
from .husimi import peak_census, q_grid, q_value
from .observables import initial_population, single_atom_inversion, total_inversion
from .reduced_states import atomic_density_sym, embed_symmetric, trace_out_one, trace_out_two

__version__ = "0.1.0"
