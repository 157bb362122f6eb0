"""Instance files, random instance generators, and the bundled examples.

File schema (JSON, UTF-8): a top-level object with ``objective`` and
``matroid``.

objective.kind:
  coverage    -- ``sets``: list of lists of element-name strings
  scheduling  -- ``p``: row-major matrix of success probabilities
  sensing     -- ``e``: list of measurement parameters; ``sigma`` optional,
                 default 1.0
  table       -- ``values``: map from comma-joined ascending indices to a
                 number, with ``""`` for the empty set (must map to 0)

matroid.kind:
  uniform     -- ``rank``
  partition   -- ``blocks`` (lists of element indices) + ``capacities``
  explicit    -- ``maximal_sets`` (lists of element indices)

Random generation draws from CPython's Mersenne Twister
(``random.Random(seed)``, doubles via ``Random.random()``), so identical
seeds reproduce instances bit-exactly across runs and platforms.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from random import Random
from typing import Union

from .errors import InstanceFormatError
from .matroids import MatroidSpec
from .objectives import ObjectiveInstance

PathLike = Union[str, Path]


def _fail(field: str, message: str) -> InstanceFormatError:
    return InstanceFormatError(f"{field}: {message}")


def _require(doc: dict, field: str, key: str):
    if key not in doc:
        raise _fail(f"{field}.{key}", "missing required field")
    return doc[key]


def _parse_objective(doc) -> ObjectiveInstance:
    if not isinstance(doc, dict):
        raise _fail("objective", "must be an object")
    kind = _require(doc, "objective", "kind")
    try:
        if kind == "coverage":
            sets = _require(doc, "objective", "sets")
            if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
                raise _fail("objective.sets", "must be a list of lists of element names")
            return ObjectiveInstance.coverage(sets)
        if kind == "scheduling":
            p = _require(doc, "objective", "p")
            if not isinstance(p, list) or not all(isinstance(r, list) for r in p):
                raise _fail("objective.p", "must be a row-major matrix")
            return ObjectiveInstance.scheduling(p)
        if kind == "sensing":
            e = _require(doc, "objective", "e")
            if not isinstance(e, list):
                raise _fail("objective.e", "must be a list of numbers")
            return ObjectiveInstance.sensing(e, float(doc.get("sigma", 1.0)))
        if kind == "table":
            values = _require(doc, "objective", "values")
            if not isinstance(values, dict):
                raise _fail("objective.values", "must be a map from index lists to numbers")
            return _parse_table(values)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InstanceFormatError):
            raise
        raise _fail(f"objective[{kind}]", str(exc)) from exc
    raise _fail("objective.kind", f"unknown kind {kind!r}")


def _parse_table(values: dict) -> ObjectiveInstance:
    if "" not in values:
        raise _fail('objective.values[""]', "the empty subset is mandatory")
    parsed: dict[int, float] = {}
    max_index = -1
    for key, val in values.items():
        mask = 0
        if key:
            prev = -1
            for part in key.split(","):
                try:
                    i = int(part)
                except ValueError:
                    raise _fail(f"objective.values[{key!r}]", "indices must be integers")
                if i <= prev:
                    raise _fail(f"objective.values[{key!r}]", "indices must be ascending")
                if i < 0:
                    raise _fail(f"objective.values[{key!r}]", "indices must be nonnegative")
                prev = i
                mask |= 1 << i
            max_index = max(max_index, prev)
        if mask in parsed:
            raise _fail(f"objective.values[{key!r}]", "duplicate subset")
        parsed[mask] = float(val)
    n = max_index + 1
    if len(parsed) != 1 << n:
        raise _fail(
            "objective.values",
            f"must be a total map over all {1 << n} subsets of {n} elements, "
            f"got {len(parsed)} entries",
        )
    return ObjectiveInstance.table([parsed[m] for m in range(1 << n)])


def _parse_matroid(doc, ground_size: int) -> MatroidSpec:
    if not isinstance(doc, dict):
        raise _fail("matroid", "must be an object")
    kind = _require(doc, "matroid", "kind")
    try:
        if kind == "uniform":
            return MatroidSpec.uniform(ground_size, int(_require(doc, "matroid", "rank")))
        if kind == "partition":
            spec = MatroidSpec.partition(
                _require(doc, "matroid", "blocks"),
                _require(doc, "matroid", "capacities"),
            )
            if spec.ground_size != ground_size:
                raise _fail(
                    "matroid.blocks",
                    f"cover {spec.ground_size} elements but the objective has {ground_size}",
                )
            return spec
        if kind == "explicit":
            return MatroidSpec.explicit(
                ground_size, _require(doc, "matroid", "maximal_sets")
            )
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InstanceFormatError):
            raise
        raise _fail(f"matroid[{kind}]", str(exc)) from exc
    raise _fail("matroid.kind", f"unknown kind {kind!r}")


def instance_from_dict(doc: dict) -> tuple[ObjectiveInstance, MatroidSpec]:
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be an object")
    objective = _parse_objective(_require(doc, "", "objective"))
    matroid = _parse_matroid(_require(doc, "", "matroid"), objective.ground_size)
    return objective, matroid


def load_instance(path: PathLike) -> tuple[ObjectiveInstance, MatroidSpec]:
    """Parse and validate an instance file; see the module docstring."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_dict(doc)


def instance_to_dict(instance: ObjectiveInstance, spec: MatroidSpec) -> dict:
    """Inverse of :func:`instance_from_dict` up to instance equivalence."""
    if instance.kind == "coverage":
        objective = {
            "kind": "coverage",
            "sets": [[instance.universe[i] for i in s] for s in instance.sets],
        }
    elif instance.kind == "scheduling":
        objective = {"kind": "scheduling", "p": [list(row) for row in instance.p]}
    elif instance.kind == "sensing":
        objective = {"kind": "sensing", "e": list(instance.e), "sigma": instance.sigma}
    else:
        from .subsets import members_of

        objective = {
            "kind": "table",
            "values": {
                ",".join(str(i) for i in members_of(m)): v
                for m, v in enumerate(instance.values)
            },
        }
    if spec.kind == "uniform":
        matroid = {"kind": "uniform", "rank": spec.rank}
    elif spec.kind == "partition":
        matroid = {
            "kind": "partition",
            "blocks": [list(b) for b in spec.blocks],
            "capacities": list(spec.capacities),
        }
    else:
        matroid = {"kind": "explicit", "maximal_sets": [list(s) for s in spec.maximal_sets]}
    return {"objective": objective, "matroid": matroid}


def save_instance(path: PathLike, instance: ObjectiveInstance, spec: MatroidSpec) -> None:
    Path(path).write_text(
        json.dumps(instance_to_dict(instance, spec), indent=2) + "\n", encoding="utf-8"
    )


def bundled_instance_path(name: str) -> Path:
    """Path of a bundled example file, e.g. ``appendix_b1``."""
    with resources.as_file(
        resources.files("batchgreedy").joinpath("data", f"{name}.json")
    ) as p:
        return Path(p)


def load_bundled(name: str) -> tuple[ObjectiveInstance, MatroidSpec]:
    return load_instance(bundled_instance_path(name))


# Seeded generators.  Sampling maps Random.random()'s [0, 1) onto the
# family-legal half-open interval that each parameter domain requires.


def random_scheduling_instance(
    n_agents: int,
    seed: int,
    subtasks: int = 1,
    low: float = 0.0,
    high: float = 1.0,
) -> ObjectiveInstance:
    """Success probabilities drawn from ]low, high] (default the full ]0, 1])."""
    if not 0.0 <= low < high <= 1.0:
        raise ValueError(f"range ]{low}, {high}] outside the legal ]0, 1]")
    rng = Random(seed)
    p = [
        [high - (high - low) * rng.random() for _ in range(n_agents)]
        for _ in range(subtasks)
    ]
    return ObjectiveInstance.scheduling(p)


def random_sensing_instance(
    n: int,
    seed: int,
    low: float = 0.5,
    high: float = 1.0,
    sigma: float = 1.0,
) -> ObjectiveInstance:
    """Measurement parameters drawn from [low, high) (default [0.5, 1))."""
    if not 0.5 <= low < high <= 1.0:
        raise ValueError(f"range [{low}, {high}) outside the legal [0.5, 1]")
    rng = Random(seed)
    e = [low + (high - low) * rng.random() for _ in range(n)]
    return ObjectiveInstance.sensing(e, sigma)


def random_coverage_instance(
    n_sets: int,
    seed: int,
    universe_size: int = 0,
    density: float = 0.4,
) -> ObjectiveInstance:
    """Random nonempty subsets of a named universe (default size 2 * n_sets)."""
    if universe_size <= 0:
        universe_size = 2 * n_sets
    rng = Random(seed)
    names = [f"e{i}" for i in range(universe_size)]
    sets = []
    for _ in range(n_sets):
        chosen = [name for name in names if rng.random() < density]
        if not chosen:
            chosen = [names[rng.randrange(universe_size)]]
        sets.append(chosen)
    return ObjectiveInstance.coverage(sets)
