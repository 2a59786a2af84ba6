"""Two-stage makespan scheduling on related machines with speed predictions."""

from ._core import (
    BudgetError,
    Instance,
    InvariantError,
    bag_loads,
    beta_ratio,
    binary_speed_partition,
    capacity_schedule,
    consistent_partition,
    evaluate,
    exact_schedule,
    fluid_ipr,
    generate,
    ipr,
    lpt_partition,
    lpt_schedule,
    merge_to_fit,
    opt_lower_bound,
    prediction_error,
    prop1_instance,
    run_experiment,
    theory_csv,
    tradeoff_instance,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
