"""Simulation and verification of hybrid polarization/spatial linear-optical CNOT and controlled-SWAP gates."""

from hybridgates.elements import BeamSplitter, IdealPbs, ImperfectPbs, SpdcSource
from hybridgates.netlist import Netlist, analyze_depth, execute_netlist, parse_netlist, serialize_netlist
from hybridgates.state import Mode, PhotonicState, apply_mode_map, inner_product

__all__ = [
    "BeamSplitter",
    "IdealPbs",
    "ImperfectPbs",
    "Mode",
    "Netlist",
    "PhotonicState",
    "SpdcSource",
    "analyze_depth",
    "apply_mode_map",
    "execute_netlist",
    "inner_product",
    "parse_netlist",
    "serialize_netlist",
]
