"""Generate hard instances by kind and persist them as an instance directory.

An instance directory holds ``metadata.json`` (kind, parameters, seed and the
planted structure), ``stream.txt``, ``witness.txt`` and, for RS-based kinds,
``rs.txt``. Loading regenerates the instance from kind, parameters and seed
and checks it against the stored stream.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..constants import DEFAULT_SUBDIVISION, METADATA_FILE, RS_FILE, STREAM_FILE, WITNESS_FILE
from ..exceptions import InstanceError
from ..file_operations import format_stream, read_json, write_json, write_path, write_stream
from ..settings import logger
from .directed import DLPInstance, SLPInstance, gen_dlp, gen_slp, slp_exact_lp, slp_source_lp
from .insdel import InsDelReductionInstance, gen_insdel_reduction
from .permutations import longest_cycle
from .rs_graphs import RSGraph, read_rs, write_rs
from .undirected import UndirReductionInstance, gen_undirected_reduction

KINDS = ("slp", "dlp", "undir-reduction", "insdel-reduction")
RS_KINDS = ("dlp", "undir-reduction")

Instance = Union[SLPInstance, DLPInstance, UndirReductionInstance, InsDelReductionInstance]


def generate(kind: str, params: Dict[str, Any], seed: int, rs: Optional[RSGraph] = None) -> Instance:
    """Build one instance; RS-based kinds need ``rs``."""
    if kind not in KINDS:
        raise ValueError(f"Unsupported instance kind: {kind}")
    if kind in RS_KINDS and rs is None:
        raise InstanceError(f"{kind} instances need an RS graph")
    if kind == "slp":
        return gen_slp(int(params["r"]), seed, params.get("sigma"), params.get("coins"))
    if kind == "dlp":
        return gen_dlp(rs, seed)
    if kind == "undir-reduction":
        return gen_undirected_reduction(
            rs, params["X"], int(params["J"]), int(params.get("ell", DEFAULT_SUBDIVISION)), seed, rho=params.get("rho")
        )
    return gen_insdel_reduction(params["X"], int(params["n"]), int(params["J"]), seed)


def planted_structure(inst: Instance) -> Dict[str, Any]:
    """JSON-ready description of what the generator planted."""
    if isinstance(inst, SLPInstance):
        return {
            "coins": list(inst.coins),
            "sigma": list(inst.sigma),
            "longest_cycle": longest_cycle(inst.sigma),
            "lp_contracted": slp_exact_lp(inst),
            "lp": slp_source_lp(inst),
        }
    if isinstance(inst, DLPInstance):
        return {
            "J": inst.J,
            "rho": list(inst.rho),
            "coins": [list(c) for c in inst.coins],
            "M_J": [list(e) for e in inst.matchings[inst.J - 1]],
            "N1": [list(e) for e in inst.bob_b1],
            "N2": [list(e) for e in inst.bob_b2],
        }
    if isinstance(inst, UndirReductionInstance):
        return {
            "J": inst.J,
            "i_star": inst.i_star,
            "j_star": inst.j_star,
            "ell": inst.ell,
            "pi": list(inst.pi),
            "Y": list(inst.Y),
            "rho": list(inst.rho),
            "special_edge": list(inst.special_edge),
            "gateway_start": inst.gateway.vertices[0],
            "gateway_end": inst.gateway.vertices[-1],
            "witness_bound": inst.witness_bound(),
            "y_index_convention": "pi",
        }
    return {
        "J": inst.J,
        "i_star": inst.i_star,
        "j_star": inst.j_star,
        "pi1": list(inst.pi1),
        "pi2": list(inst.pi2),
        "Z": [list(row) for row in inst.Z],
        "Y": [list(row) for row in inst.Y],
        "Y_prime": [list(row) for row in inst.Y_prime],
        "M": [list(e) for e in inst.M],
        "N1": [list(e) for e in inst.N1],
        "N2": [list(e) for e in inst.N2],
    }


def save_instance(
    directory: Union[str, Path], kind: str, params: Dict[str, Any], seed: int, inst: Instance,
    rs: Optional[RSGraph] = None,
) -> Path:
    """Write metadata, stream, witness and RS files into ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    write_stream(out / STREAM_FILE, inst.stream)
    write_path(out / WITNESS_FILE, inst.witness)
    if rs is not None:
        write_rs(out / RS_FILE, rs)
    write_json(
        out / METADATA_FILE,
        {
            "kind": kind,
            "seed": seed,
            "params": params,
            "n": inst.stream.n,
            "directed": inst.stream.directed,
            "witness_length": inst.witness.length,
            "planted": planted_structure(inst),
        },
    )
    logger.info("saved %s instance (seed %d) to %s", kind, seed, out)
    return out


def load_instance(directory: Union[str, Path]) -> Dict[str, Any]:
    """Regenerate a saved instance; returns the metadata with ``instance`` and ``rs`` added."""
    root = Path(directory)
    metadata = read_json(root / METADATA_FILE)
    rs = read_rs(root / RS_FILE) if (root / RS_FILE).exists() else None
    inst = generate(metadata["kind"], metadata["params"], int(metadata["seed"]), rs)
    stored = (root / STREAM_FILE).read_text(encoding="ascii")
    if stored != format_stream(inst.stream):
        raise InstanceError(f"{root / STREAM_FILE} does not match the regenerated instance")
    return {**metadata, "instance": inst, "rs": rs}
