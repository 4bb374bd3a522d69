from .register import ClassicalRegister, classical_update, three_site_exchange
from .chain import ProtocolTrace, StepRecord, measure_step, run_chain
from .census import branch_census, distinct_up_to_phase
from .gadget import GeometrySpec, communication_audit, run_gadget, u_gate
from .compiler import CompileReport, compile_rotation
