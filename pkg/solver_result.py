"""Module with the answer object shared by both solvers."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from greedy import Coloring
from witness import GrundyWitness, PartialGrundyWitness, witness_to_json

YES = "yes"
NO = "no"
NO_WITNESS_FOUND = "no_witness_found"


@dataclass(frozen=True)
class SolverResult:
    """Decision with its certificate.

    Args:
        problem (str): "pgc" or "grundy".
        k (int): Target number of colors.
        answer (str): "yes", "no" or "no_witness_found".
        coloring (Optional[Coloring]): Certified coloring on a yes answer.
        witness (Optional[Union[PartialGrundyWitness, GrundyWitness]]): Witness on a yes answer.
        stats (Dict[str, Any]): Counters of the run.
        i (Optional[int]): Forbidden biclique side, grundy only.
        j (Optional[int]): Forbidden biclique side, grundy only.
    """

    problem: str
    k: int
    answer: str
    coloring: Optional[Coloring] = None
    witness: Optional[Union[PartialGrundyWitness, GrundyWitness]] = None
    stats: Dict[str, Any] = field(default_factory=dict)
    i: Optional[int] = None
    j: Optional[int] = None

    @property
    def is_yes(self) -> bool:
        return self.answer == YES

    @property
    def exit_code(self) -> int:
        return 0 if self.is_yes else 1

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "problem": self.problem,
            "k": self.k,
            "answer": self.answer,
            "stats": dict(self.stats),
        }
        if self.i is not None:
            data["i"] = self.i
            data["j"] = self.j
        if self.is_yes:
            certificate = witness_to_json(self.witness) if self.witness is not None else {}
            if self.coloring is not None:
                certificate["coloring"] = list(self.coloring.colors)
            data["certificate"] = certificate
        return data
