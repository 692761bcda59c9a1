"""Pseudospectral laboratory for the coupled Dirac-Klein-Gordon system.

The heavy lifting lives in the compiled extension; this package simply
re-exports it. Grids, fields, and reports cross the boundary as small
handle objects, with ``array()`` / ``phi`` style accessors returning numpy
copies.
"""

from ._core import (  # noqa: F401
    AlgebraReport,
    DKGState,
    EstimateSpec,
    Field,
    Grid3,
    IdentityCheck,
    Integrator,
    IterationRecord,
    KeyBilinearResult,
    NormSpec,
    NormVariant,
    PicardReport,
    ProbeReport,
    SampleRecord,
    ScalarState,
    ScalingReport,
    Sign,
    Snapshot,
    SolverConfig,
    Space,
    Trajectory,
    WeightReport,
    __version__,
    angle,
    basis_matrix,
    chadam_glassey_data,
    charge,
    density,
    estimate_registry,
    half_wave,
    key_bilinear_ratio,
    km_estimate,
    l2_norm,
    make_state,
    null_symbol,
    operator_norm,
    picard_iterate,
    probe_key_bilinear,
    probe_product,
    probe_strichartz,
    project_field,
    projection,
    random_scalar_state,
    random_spinor,
    read_snapshot,
    scaling_check,
    sobolev_norm,
    solve,
    split_data,
    strichartz_ratio,
    to_frequency,
    to_physical,
    total_spinor,
    validate_config,
    verify_algebra,
    weight_sweep,
    write_snapshot,
)

__all__ = [name for name in dir() if not name.startswith("_")]
