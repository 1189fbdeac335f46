"""Room and proctor scheduling for rounds of large simultaneous exams."""

from .crew_organization import expand_positions, organize_crew, select_supervisors
from .flow import FlowNetwork, feasible_flow_with_lower_bounds, max_flow
from .ingest import load_bundle
from .model import ScheduleConfig, validate_round
from .personnel_decision import decide_personnel, solve_equity, update_log
from .room_decision import choose_rooms, distribute_slack, schedule_round, schedule_test, solve_knapsack_dp

__all__ = [
    "FlowNetwork",
    "ScheduleConfig",
    "choose_rooms",
    "decide_personnel",
    "distribute_slack",
    "expand_positions",
    "feasible_flow_with_lower_bounds",
    "load_bundle",
    "max_flow",
    "organize_crew",
    "schedule_round",
    "schedule_test",
    "select_supervisors",
    "solve_equity",
    "solve_knapsack_dp",
    "update_log",
    "validate_round",
]

__version__ = "0.1.0"
