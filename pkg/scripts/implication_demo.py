#!/usr/bin/env python3
"""Walk through the standard implication queries on four nodes.

Shows a local implication that holds, its failing reverse with a weight
counterexample, the failing global version, and the three premise-minimality
queries around the blocking-set Spohn rules.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from maxoid.graph import Dag
from maxoid.implication import decide_implication
from maxoid.separation import maxoid, parse_ci_statement as ci
from maxoid.tropical import weights_to_list_json


def show(scope, premises, conclusions, label):
    v = decide_implication(scope, [ci(p) for p in premises], [ci(q) for q in conclusions])
    head = f"{' & '.join(premises)}  =>  {' | '.join(conclusions)}   [{label}]"
    if v.holds:
        print(f"{head}\n    holds\n")
    else:
        wd = v.counterexample
        print(f"{head}\n    fails: graph {sorted(wd.g.edges)}, "
              f"weights {weights_to_list_json(wd)}")
        print(f"    structure: {[str(s) for s in maxoid(wd)]}\n")


def main() -> None:
    k4 = Dag(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)])
    show(k4, ["1,4|3"], ["2,4|1,3"], "local, complete DAG")
    show(k4, ["2,4|1,3"], ["1,4|3"], "local, reversed")
    show(4, ["1,4|3"], ["2,4|1,3"], "global, 4 nodes")
    for prem in (["1,4|2,3", "2,3|1"], ["1,4|2,3", "2,3|"], ["2,3|", "2,3|1"]):
        show(4, prem, ["2,3|4"], "global premise-minimality")


if __name__ == "__main__":
    main()
