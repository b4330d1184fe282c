"""One-pass runs over an event stream: the sampling algorithm and its hybrid with full storage."""

import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, FrozenSet, Optional, Tuple, Union

from .constants import CORE_VERIFY_RESTARTS, DEFAULT_DELTA, EXACT_BUDGET, SAMPLE_CONSTANT
from .exceptions import BudgetExceededError, StreamError
from .file_operations import write_path
from .graph_core import Edge, Graph, PathWitness, build_graph
from .pathfinder import exact_longest_path, extract_path_from_sample
from .samplers import ReservoirState, SampleF, SparseRecovery, TurnstileSampler
from .settings import logger
from .stream_model import EventStream, StreamEvent, validate_stream

SAMPLERS = ("auto", "reservoir", "l0")


@dataclass(frozen=True)
class RunReport:
    """Outcome of one streaming run; ``space_used`` counts stored edges or sketch cells."""

    path: PathWitness
    mode: str
    sampler: str
    sample_size: int
    achieved: int
    space_used: int
    seed: int

    def to_dict(self) -> Dict[str, Any]:
        document = asdict(self)
        document["path"] = list(self.path.vertices)
        document["length"] = self.path.length
        return document

    def to_text(self) -> str:
        """key=value lines, path and vertices excluded (they go to the path file)."""
        document = self.to_dict()
        document.pop("path")
        return "".join(f"{key}={document[key]}\n" for key in sorted(document))


def sample_size(n: int, constant: float = SAMPLE_CONSTANT) -> int:
    """k = ceil(c * n * ln n), at least one."""
    if n <= 1:
        return 1
    return max(1, math.ceil(constant * n * math.log(n)))


class EdgeStore:
    """The trivial algorithm: keep up to ``space`` distinct edges of the final graph."""

    def __init__(self, n: int, directed: bool, space: int, insertion_only: bool, seed: int) -> None:
        """Initialize a plain edge set, or a sparse-recovery table for deletions."""
        self.n = n
        self.directed = directed
        self.space = space
        self.insertion_only = insertion_only
        self.overflow = False
        self.kept: set = set()
        self.recovery = None if insertion_only else SparseRecovery(n, directed, space, seed)

    def update(self, event: StreamEvent) -> None:
        if self.recovery is not None:
            self.recovery.update(event)
            return
        if self.overflow:
            return
        self.kept.add(event.edge(self.directed))
        if len(self.kept) > self.space:
            self.overflow = True
            self.kept.clear()

    @property
    def stored(self) -> int:
        if self.recovery is not None:
            return int(self.recovery.count.size)
        return len(self.kept)

    def edges(self) -> Optional[FrozenSet[Edge]]:
        """All final edges when there are at most ``space`` of them, else None."""
        if self.recovery is None:
            return None if self.overflow else frozenset(self.kept)
        support = self.recovery.decode()
        if support is None or len(support) > self.space:
            return None
        return frozenset(support)


class StreamRunner:
    """Run the sampling algorithm (and its hybrid) over event streams."""

    def __init__(
        self,
        seed: int,
        sampler: str = "auto",
        delta: float = DEFAULT_DELTA,
        sample_constant: float = SAMPLE_CONSTANT,
        restarts: int = CORE_VERIFY_RESTARTS,
        budget: int = EXACT_BUDGET,
    ) -> None:
        """Initialize the runner configuration."""
        if sampler not in SAMPLERS:
            raise ValueError(f"Unsupported sampler: {sampler}")
        self.seed = seed
        self.sampler = sampler
        self.delta = delta
        self.sample_constant = sample_constant
        self.restarts = restarts
        self.budget = budget

    def _check(self, stream: EventStream) -> None:
        violation = validate_stream(stream)
        if violation:
            raise StreamError(f"invalid stream at event {violation.position}: {violation.detail}", violation.position)

    def _make_sampler(self, stream: EventStream, k: int) -> Tuple[str, Union[ReservoirState, TurnstileSampler]]:
        name = self.sampler
        if name == "auto":
            name = "reservoir" if stream.is_insertion_only else "l0"
        if name == "reservoir":
            return name, ReservoirState(stream.n, stream.directed, k, self.seed)
        return name, TurnstileSampler(stream.n, stream.directed, k, self.seed, self.delta)

    def _extract(self, sample: SampleF, mode: str, oracle_graph: Optional[Graph]) -> Tuple[PathWitness, str]:
        try:
            path = extract_path_from_sample(sample, mode, oracle_graph, self.seed, self.restarts, self.budget)
            return path, mode
        except BudgetExceededError as e:
            logger.warning("exact extraction stopped (%s), falling back to heuristic", e)
            path = extract_path_from_sample(sample, "heuristic", oracle_graph, self.seed, self.restarts, self.budget)
            return path, "heuristic"

    def run_semi_streaming(
        self, stream: EventStream, mode: str = "exact", oracle_graph: Optional[Graph] = None, k: Optional[int] = None
    ) -> RunReport:
        """Sample k edges in one pass and return a long path of G[F]."""
        self._check(stream)
        k = sample_size(stream.n, self.sample_constant) if k is None else k
        name, sampler = self._make_sampler(stream, k)
        for event in stream.events:
            sampler.update(event)
        sample = sampler.sample()
        logger.debug("sample holds %d of %d requested edges", sample.achieved, k)

        path, used_mode = self._extract(sample, mode, oracle_graph)
        logger.info("run finished: mode=%s sampler=%s k=%d path length=%d", used_mode, name, k, path.length)
        return RunReport(path, used_mode, name, k, sample.achieved, sample.stored, self.seed)

    def hybrid_run(
        self, stream: EventStream, space: int, mode: str = "heuristic", oracle_graph: Optional[Graph] = None
    ) -> RunReport:
        """Run the sampler next to a store of up to ``space`` edges; exact when everything fit."""
        self._check(stream)
        k = sample_size(stream.n, self.sample_constant)
        if space < k:
            raise ValueError(f"space {space} is below the sample size {k}")
        name, sampler = self._make_sampler(stream, k)
        store = EdgeStore(stream.n, stream.directed, space, stream.is_insertion_only, self.seed)
        for event in stream.events:
            sampler.update(event)
            store.update(event)
        sample = sampler.sample()
        space_used = sample.stored + store.stored

        stored_edges = store.edges()
        if stored_edges is not None:
            try:
                path = exact_longest_path(build_graph(stream.n, stored_edges, stream.directed), self.budget)
                logger.info("hybrid run kept all %d edges, exact path length %d", len(stored_edges), path.length)
                return RunReport(path, "hybrid-exact", name, k, len(stored_edges), space_used, self.seed)
            except BudgetExceededError as e:
                logger.warning("exact search on the stored graph stopped (%s), using the sample", e)

        path, _ = self._extract(sample, mode, oracle_graph)
        logger.info("hybrid run over budget, sampled path length %d", path.length)
        return RunReport(path, "hybrid-sampled", name, k, sample.achieved, space_used, self.seed)

    def save_run(self, report: RunReport, path_file: Union[str, Path], report_file: Union[str, Path]) -> None:
        """Write the path file and the key=value report."""
        write_path(path_file, report.path)
        Path(report_file).write_text(report.to_text(), encoding="utf-8")


def run_semi_streaming(
    stream: EventStream, mode: str = "exact", seed: int = 0, oracle_graph: Optional[Graph] = None, **options: Any
) -> RunReport:
    return StreamRunner(seed, **options).run_semi_streaming(stream, mode, oracle_graph)


def hybrid_run(
    stream: EventStream, space: int, seed: int = 0, mode: str = "heuristic", oracle_graph: Optional[Graph] = None,
    **options: Any,
) -> RunReport:
    return StreamRunner(seed, **options).hybrid_run(stream, space, mode, oracle_graph)
