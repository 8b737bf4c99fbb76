"""Command-line interface.

Single entry point exposing simulation, reward analysis, commitment
devices, fixture generation, verification, and parameter sweeps, with
machine-readable output: JSON by default, CSV for sweeps, DOT for graphs.
Rationals are emitted as strings so downstream tools cannot lose
precision. Exit codes: 0 success, 1 domain error (the error's name is
printed verbatim), 2 usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import commitment, fixtures, goal_reward, oracle, reward_seeking
from .agents import AgentSpec, Objective, cost_ratio, simulate
from .errors import DomainError, ParameterConstraintViolated
from .graph import dumps as graph_dumps
from .graph import loads as graph_loads
from .graph import shortest_path, to_dot
from .rationals import fmt, rat
from .tiebreak import DEFAULT_TIE_BREAK, TieBreakPolicy


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str):
    return graph_loads(_read_text(path))


def _load_agent(text: str, tie_break=None) -> AgentSpec:
    if text.startswith("@"):
        text = _read_text(text[1:])
    spec = AgentSpec.from_json(text)
    if tie_break is not None:
        spec = AgentSpec(
            spec.kind, spec.bias_b, spec.believed_bias_b_prime, tie_break, spec.objective
        )
    return spec


def _load_placement(path: str):
    data = json.loads(_read_text(path))
    placement = {}
    for key, value in data.items():
        if "->" not in key:
            raise ParameterConstraintViolated(f'placement keys look like "u->v", got {key!r}')
        u, v = key.split("->", 1)
        placement[(u.strip(), v.strip())] = rat(value)
    return placement


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _tie(args) -> TieBreakPolicy:
    return TieBreakPolicy.parse(args.tie_break)


def _parse_values(text: str):
    return [rat(part) for part in text.split(",") if part.strip()]


# -- handlers -------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    graph = _load_graph(args.graph)
    agent = _load_agent(args.agent, TieBreakPolicy.parse(args.tie_break) if args.tie_break else None)
    trace = (
        reward_seeking.simulate(graph, agent)
        if agent.objective is Objective.MAXIMIZE_REWARD
        else simulate(graph, agent)
    )
    _emit(trace.to_dict())
    return 0


def _cmd_rewards(args) -> int:
    graph = _load_graph(args.graph)
    b = rat(args.b)
    tie = _tie(args)
    if args.action == "prune":
        report = goal_reward.prune(graph, b, rat(args.reward), tie)
        _emit(
            {
                "reward": fmt(report.reward),
                "abandoned_nodes": sorted(report.abandoned_nodes),
                "pruned_edges": [[u, v] for u, v in sorted(report.pruned_edges)],
                "traversable": not report.source_abandoned,
            }
        )
    elif args.action == "traverse":
        trace = goal_reward.traverse_with_reward(graph, b, rat(args.reward), tie)
        _emit(trace.to_dict())
    elif args.action == "feasible-set":
        intervals = goal_reward.feasible_reward_set(graph, b, tie)
        _emit({"intervals": intervals.to_json_list()})
    elif args.action == "min":
        _emit({"r_min": fmt(goal_reward.min_reward(graph, b, tie))})
    elif args.action == "min-deletion":
        value, path = goal_reward.min_reward_with_deletion(graph, b)
        _emit({"r_d": fmt(value), "path": list(path.nodes)})
    else:  # check-internal
        placement = _load_placement(args.placement)
        result = goal_reward.check_internal_distribution(graph, b, placement, tie)
        payload = result.trace.to_dict()
        payload["reached"] = result.reached
        _emit(payload)
    return 0


def _cmd_reward_seek(args) -> int:
    graph = _load_graph(args.graph)
    agent = _load_agent(args.agent, TieBreakPolicy.parse(args.tie_break) if args.tie_break else None)
    if agent.objective is not Objective.MAXIMIZE_REWARD:
        agent = AgentSpec(
            agent.kind,
            agent.bias_b,
            agent.believed_bias_b_prime,
            agent.tie_break,
            Objective.MAXIMIZE_REWARD,
        )
    if args.action == "simulate":
        _emit(reward_seeking.simulate(graph, agent).to_dict())
    else:
        _emit({"reward_ratio": fmt(reward_seeking.reward_ratio(graph, agent))})
    return 0


def _cmd_commit(args) -> int:
    graph = _load_graph(args.graph)
    b = rat(args.b)
    tie = _tie(args)
    if args.device == "delete":
        result = commitment.commit_by_deletion(graph, b, args.k, tie)
    elif args.device == "zero-edge":
        result = commitment.best_zero_edge(graph, b, tie)
    else:  # plan
        if args.placement:
            result = commitment.evaluate_plan(graph, b, _load_placement(args.placement), tie)
        else:
            result = commitment.search_plan(graph, b, tie)
    _emit(result.to_dict())
    return 0


def _cmd_gen(args, extra) -> int:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise ParameterConstraintViolated(f"--param wants key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    index = 0
    while index < len(extra):
        token = extra[index]
        if not token.startswith("--") or index + 1 >= len(extra):
            raise ParameterConstraintViolated(f"unexpected generator argument {token!r}")
        params[token[2:]] = extra[index + 1]
        index += 2

    if args.family == "list":
        families = [
            {
                "family": f.name,
                "parameters": f.parameters,
                "description": f.description,
                "required_tie_break": f.required_tie_break.value if f.required_tie_break else None,
            }
            for f in fixtures.FAMILIES.values()
        ]
        families.append(
            {
                "family": "random",
                "parameters": "seed, n, density, w_lo, w_hi",
                "description": "seeded layered DAG with every node on a source-target path",
                "required_tie_break": None,
            }
        )
        _emit(sorted(families, key=lambda f: f["family"]))
        return 0

    if args.family == "random":
        graph = fixtures.random_dag(
            seed=int(params.pop("seed", args.seed)),
            n=int(params.pop("n", 8)),
            density=rat(params.pop("density", "1/2")),
            weight_range=(int(params.pop("w_lo", 0)), int(params.pop("w_hi", 10))),
        )
        if params:
            raise ParameterConstraintViolated(f"unknown random parameters: {sorted(params)}")
    else:
        coerced = {}
        for key, value in params.items():
            if key in ("n", "m") and value != "auto":
                coerced[key] = int(value)
            elif key == "m" or key == "pruned":
                coerced[key] = value if key == "m" else value.lower() in ("1", "true", "yes")
            else:
                coerced[key] = rat(value)
        graph = fixtures.generate(args.family, **coerced)
    sys.stdout.write(to_dot(graph) if args.format == "dot" else graph_dumps(graph) + "\n")
    return 0


def _cmd_verify(args) -> int:
    graph = _load_graph(args.graph)
    if args.action == "equilibrium":
        agent = _load_agent(args.agent)
        if agent.objective is Objective.MAXIMIZE_REWARD:
            table = reward_seeking.reward_table(graph, agent)
        else:
            from .agents import cost_table

            table = cost_table(graph, agent)
        report = oracle.brute_force_equilibrium_check(graph, agent, table)
        _emit({"ok": report.ok, "failures": list(report.failures)})
        return 0 if report.ok else 1
    b = rat(args.b)
    if args.rewards:
        samples = _parse_values(args.rewards)
    else:
        samples = oracle.grid_rewards(rat(args.lo), rat(args.hi), args.samples)
    verdicts = oracle.feasibility_grid(graph, b, samples, _tie(args))
    _emit(
        {
            "samples": [
                {"reward": fmt(r), "traversable": ok} for r, ok in zip(samples, verdicts)
            ]
        }
    )
    return 0


def _cmd_sweep(args) -> int:
    graph = _load_graph(args.graph)
    values = _parse_values(args.values)
    tie = TieBreakPolicy.parse(args.tie_break)
    rows = [("parameter", "path", "true_total", "ratio")]
    if args.vary == "b":
        template = (
            _load_agent(args.agent, tie)
            if args.agent
            else AgentSpec.from_dict({"kind": "sophisticated", "b": "2", "tie_break": args.tie_break})
        )
        for value in values:
            agent = AgentSpec(
                template.kind, value, template.believed_bias_b_prime, tie, template.objective
            )
            if agent.objective is Objective.MAXIMIZE_REWARD:
                trace = reward_seeking.simulate(graph, agent)
                ratio = reward_seeking.reward_ratio(graph, agent)
            else:
                trace = simulate(graph, agent)
                ratio = cost_ratio(graph, agent)
            rows.append((fmt(value), "-".join(trace.path.nodes), fmt(trace.true_total), fmt(ratio)))
    else:
        b = rat(args.b)
        optimal, _ = shortest_path(graph)
        base = optimal[graph.source]
        for value in values:
            trace = goal_reward.traverse_with_reward(graph, b, value, tie)
            if trace.abandoned_at is not None:
                rows.append((fmt(value), "", "", ""))
            else:
                ratio = fmt(trace.true_total / base) if base != 0 else ""
                rows.append((fmt(value), "-".join(trace.path.nodes), fmt(trace.true_total), ratio))
    sys.stdout.write("\n".join(",".join(row) for row in rows) + "\n")
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="presentbias",
        description="Simulate present-biased agents on weighted DAGs and analyze rewards and commitment devices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, reward=False, agent=False):
        p.add_argument("--graph", required=True, help="graph JSON file, or - for stdin")
        p.add_argument("--tie-break", default=DEFAULT_TIE_BREAK.value, dest="tie_break")
        if reward:
            p.add_argument("--b", required=True, help="present-bias parameter (rational)")
        if agent:
            p.add_argument("--agent", required=True, help="agent JSON, inline or @file")

    p = sub.add_parser("simulate", help="trace one agent's walk")
    p.add_argument("--graph", required=True)
    p.add_argument("--agent", required=True)
    p.add_argument("--tie-break", default=None, dest="tie_break")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("rewards", help="reward-at-goal analyses")
    p.add_argument(
        "action",
        choices=["prune", "traverse", "feasible-set", "min", "min-deletion", "check-internal"],
    )
    add_common(p, reward=True)
    p.add_argument("--reward", help="reward at the target (rational)")
    p.add_argument("--placement", help="JSON file mapping u->v to amounts")
    p.set_defaults(func=_cmd_rewards)

    p = sub.add_parser("reward-seek", help="pure reward-seeking model")
    p.add_argument("action", choices=["simulate", "ratio"])
    p.add_argument("--graph", required=True)
    p.add_argument("--agent", required=True)
    p.add_argument("--tie-break", default=None, dest="tie_break")
    p.set_defaults(func=_cmd_reward_seek)

    p = sub.add_parser("commit", help="commitment devices")
    p.add_argument("device", choices=["delete", "zero-edge", "plan"])
    add_common(p, reward=True)
    p.add_argument("--k", type=int, help="interval count for delete")
    p.add_argument("--search", action="store_true", help="search plans (default for plan)")
    p.add_argument("--placement", help="JSON placement file for plan")
    p.set_defaults(func=_cmd_commit)

    p = sub.add_parser("gen", help="generate fixture graphs ('gen list' enumerates families)")
    p.add_argument("family")
    p.add_argument("--param", action="append", help="key=value (repeatable)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random family")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=_cmd_gen, allow_extra=True)

    p = sub.add_parser("verify", help="brute-force oracles")
    p.add_argument("action", choices=["equilibrium", "grid"])
    p.add_argument("--graph", required=True)
    p.add_argument("--agent", help="agent JSON for equilibrium")
    p.add_argument("--b", help="bias for grid")
    p.add_argument("--rewards", help="comma-separated reward samples")
    p.add_argument("--lo", default="0")
    p.add_argument("--hi", default="100")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--tie-break", default=DEFAULT_TIE_BREAK.value, dest="tie_break")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="vary b or the reward over a grid; CSV output")
    p.add_argument("--graph", required=True)
    p.add_argument("--vary", choices=["b", "reward"], required=True)
    p.add_argument("--values", required=True, help="comma-separated rationals")
    p.add_argument("--agent", help="agent JSON template (b sweeps)")
    p.add_argument("--b", help="bias (reward sweeps)")
    p.add_argument("--tie-break", default=DEFAULT_TIE_BREAK.value, dest="tie_break")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and not getattr(args, "allow_extra", False):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if getattr(args, "allow_extra", False):
            return args.func(args, extra)
        return args.func(args)
    except DomainError as exc:
        sys.stderr.write(f"{exc.name}: {exc}\n")
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
