"""JSON-lines registry of known book Ramsey bounds."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

import structlog
from pydantic import ValidationError as PydanticValidationError

from ..constants import REGISTRY_TEMP_SUFFIX, SEED_REGISTRY
from ..graphs import to_graph6
from ..types.exceptions import RegistryError, WitnessRejectedError
from ..types.models import BookParams, BoundInterval, BoundRecord, VerificationReport
from .verify import resolve_witness, verify_witness

logger = structlog.get_logger(__name__)


def witness_fingerprint(graph6: str) -> str:
    """Short content hash of a witness graph6 string."""
    return hashlib.sha1(graph6.encode("ascii")).hexdigest()[:16]


def _record_key(rec: BoundRecord) -> Tuple:
    witness = rec.witness.label() if rec.witness else None
    return (rec.r, rec.s, rec.kind, rec.value, witness)


def read_records(path: Path) -> List[BoundRecord]:
    """Parse a JSON-lines file; blank lines and ``#`` comments are skipped."""
    records = []
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as exc:
        raise RegistryError(f"Cannot read registry {path}: {exc}", {"path": str(path)}) from exc
    for line_no, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            records.append(BoundRecord.model_validate(json.loads(text)))
        except (json.JSONDecodeError, PydanticValidationError) as exc:
            raise RegistryError(
                f"Invalid registry record at {path}:{line_no}: {exc}",
                {"path": str(path), "line": line_no},
            ) from exc
    return records


def write_records(path: Path, records: Iterable[BoundRecord]) -> None:
    """Atomically replace ``path`` with one JSON object per record."""
    path = Path(path)
    temp_file = path.with_suffix(path.suffix + REGISTRY_TEMP_SUFFIX)
    payload = "".join(json.dumps(rec.model_dump(mode="json", exclude_none=True)) + "\n" for rec in records)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd = os.open(temp_file, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o644)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(payload)
        except BaseException:
            try:
                os.close(fd)
            except OSError:
                pass
            raise
        temp_file.replace(path)
    except OSError as exc:
        logger.warning("Failed to save registry", path=str(path), error=str(exc))
        if temp_file.exists():
            try:
                temp_file.unlink()
            except OSError:
                pass
        raise RegistryError(f"Cannot write registry {path}: {exc}", {"path": str(path)}) from exc


class BoundsRegistry:
    """Bundled seed records plus an optional user file.

    Single writer: :meth:`put` rewrites the user file atomically. Seed records
    are read-only. Queries are symmetric in ``(r, s)``.
    """

    def __init__(self, path: Optional[Path] = None, include_seed: bool = True):
        self.path = Path(path) if path is not None else None
        self.seed: List[BoundRecord] = read_records(SEED_REGISTRY) if include_seed else []
        self.user: List[BoundRecord] = []
        if self.path is not None and self.path.exists():
            self.user = read_records(self.path)
        logger.debug("Registry loaded", seed=len(self.seed), user=len(self.user), path=str(self.path))

    @property
    def records(self) -> List[BoundRecord]:
        return self.seed + self.user

    def records_for(self, r: int, s: int) -> List[BoundRecord]:
        return [rec for rec in self.records if (rec.r, rec.s) in ((r, s), (s, r))]

    def query(self, r: int, s: int) -> BoundInterval:
        """Best known ``[lower, upper]`` for ``R(B_r, B_s)``."""
        interval = BoundInterval(r=r, s=s)
        for rec in self.records_for(r, s):
            if rec.bounds_lower and (interval.lower is None or rec.value > interval.lower):
                interval.lower = rec.value
                interval.lower_provenance = rec.provenance
            if rec.bounds_upper and (interval.upper is None or rec.value < interval.upper):
                interval.upper = rec.value
                interval.upper_provenance = rec.provenance
        return interval

    def _check_conflict(self, rec: BoundRecord) -> None:
        current = self.query(rec.r, rec.s)
        if rec.bounds_lower and current.upper is not None and rec.value > current.upper:
            raise RegistryError(
                f"Lower bound {rec.value} for R(B_{rec.r},B_{rec.s}) exceeds known upper bound {current.upper}",
                {"record": rec.model_dump(mode="json"), "upper": current.upper},
            )
        if rec.bounds_upper and current.lower is not None and rec.value < current.lower:
            raise RegistryError(
                f"Upper bound {rec.value} for R(B_{rec.r},B_{rec.s}) is below known lower bound {current.lower}",
                {"record": rec.model_dump(mode="json"), "lower": current.lower},
            )

    def verify_record(self, rec: BoundRecord) -> Optional[VerificationReport]:
        """Verify the witness of a lower-bounding record; ``None`` when there is nothing to run."""
        if rec.witness is None or not rec.bounds_lower:
            return None
        report = verify_witness(rec.witness, BookParams.of(rec.r, rec.s), rec.value)
        if report.passed and report.graph6 is not None and rec.witness.sha1 is not None:
            if witness_fingerprint(report.graph6) != rec.witness.sha1:
                report.error = f"Witness hash mismatch for {rec.witness.label()}"
        return report

    def put(self, rec: BoundRecord) -> BoundRecord:
        """Verify, conflict-check and persist ``rec``.

        Raises:
            WitnessRejectedError: the witness does not prove the claimed bound.
            RegistryError: the record contradicts a known bound, or the file
                cannot be written.
        """
        report = self.verify_record(rec)
        if report is not None and not report.passed:
            raise WitnessRejectedError(rec.r, rec.s, rec.value, report=report)
        self._check_conflict(rec)

        stored = rec.model_copy(deep=True)
        if stored.witness is not None and stored.witness.graph6 is None:
            graph6 = report.graph6 if report is not None else to_graph6(resolve_witness(stored.witness))
            stored.witness.graph6 = graph6
            stored.witness.sha1 = witness_fingerprint(graph6)

        if any(_record_key(existing) == _record_key(stored) for existing in self.records):
            logger.info("Record already present", r=stored.r, s=stored.s, value=stored.value)
            return stored

        self.user.append(stored)
        if self.path is not None:
            write_records(self.path, self.user)
        logger.info("Registry record added", r=stored.r, s=stored.s, kind=stored.kind.value, value=stored.value)
        return stored

    def verify_all(self) -> List[Tuple[BoundRecord, VerificationReport]]:
        results = []
        for rec in self.records:
            report = self.verify_record(rec)
            if report is not None:
                results.append((rec, report))
        return results


def registry_query(r: int, s: int, registry: Optional[BoundsRegistry] = None) -> BoundInterval:
    return (registry or BoundsRegistry()).query(r, s)


def registry_put(rec: BoundRecord, registry: Optional[BoundsRegistry] = None) -> BoundRecord:
    return (registry or BoundsRegistry()).put(rec)
