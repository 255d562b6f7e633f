"""Physical billiards: hard-ball collisions with smooth walls and visible corners."""

from .collision import (BallSpec, BallState, CollisionContext, Impulse, Surface, VelocitySplit,
                        audit_conservation, collision_matrix, decompose_velocity, eigenstructure,
                        impulse_residual, kinetic_energy, reflect, reflect_rough, reflect_smooth)
from .dynamics import (CollisionEvent, SourceKind, Termination, Trajectory, next_event, simulate, step,
                       time_reverse, write_csv)
from .errors import (BilliardError, ContractViolation, GeometryError, InitialStateError, ReductionError,
                     SimulationError, TableFormatError, TableVanishesError)
from .geometry import (Arc, CornerInfo, CornerKind, ReducedTable, Segment, Table, classify_corners,
                       distance_to_boundary, is_visible_for_radius, reduce_table)
from .tableio import load_table, parse_table, table_from_dict, table_to_dict

__version__ = "0.1.0"
