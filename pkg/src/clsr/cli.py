"""Command-line client for the planning pipeline.

Each subcommand reads its input files, dispatches the same request models the
HTTP service consumes to the shared ops layer, and writes the returned
artifacts. ``clsr serve`` runs the HTTP service itself. Set CLSR_LOG to
control verbosity (e.g. CLSR_LOG=INFO).
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

import click

from . import __version__
from .domains import domain_names, get_domain
from .errors import ClsrError
from .roadmap import Roadmap
from .service import ops
from .service.schemas import (
    AgentModel,
    BenchRequest,
    BuildRequest,
    GenerateRequest,
    ObservationModel,
    PlanRequest,
    WeightsModel,
)

log = logging.getLogger(__name__)


def _parse_weights(text: str) -> WeightsModel:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise click.BadParameter("expected four comma-separated values: alpha,beta,gamma,mu")
    try:
        a, b, g, m = (float(p) for p in parts)
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    return WeightsModel(alpha=a, beta=b, gamma=g, mu=m)


def _load_agent_models(path: str) -> list[AgentModel]:
    with open(path, "r", encoding="utf-8") as fh:
        return [AgentModel.model_validate(item) for item in json.load(fh)]


def _load_observation(path: str) -> ObservationModel:
    with open(path, "r", encoding="utf-8") as fh:
        return ObservationModel.model_validate(json.load(fh))


def _load_roadmap(path: str) -> Roadmap:
    with open(path, "r", encoding="utf-8") as fh:
        return Roadmap.loads(fh.read())


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")


def _write_suggestion(out_dir: Path, report: dict, text: str) -> None:
    _write(out_dir / "suggestion.json", json.dumps(report, indent=2))
    _write(out_dir / "suggestion.txt", text)
    for i, blocking in enumerate(report.get("blocking_actions", [])):
        for side in ("from", "to"):
            dep = blocking[f"{side}_depiction"]
            base = out_dir / f"blocking_{i:03d}_{side}"
            _write(base.with_suffix(".json"), json.dumps(dep["data"], indent=2))
            if dep.get("svg"):
                _write(base.with_suffix(".svg"), dep["svg"])


class _Cli(click.Group):
    """Surfaces package and validation errors as clean CLI failures (exit 1)."""

    def invoke(self, ctx):
        from pydantic import ValidationError

        try:
            return super().invoke(ctx)
        except ClsrError as exc:
            raise click.ClickException(str(exc))
        except (ValidationError, ValueError) as exc:
            raise click.ClickException(str(exc))
        except KeyError as exc:
            raise click.ClickException(exc.args[0] if exc.args else str(exc))


@click.group(cls=_Cli)
@click.version_option(version=__version__, prog_name="clsr")
def main():
    """Build layered roadmaps from tuple datasets and plan for multi-agent teams."""
    logging.basicConfig(level=os.environ.get("CLSR_LOG", "WARNING").upper())


@main.command("gen-dataset")
@click.option("--domain", "domain_name", required=True,
              help=f"Bundled domain ({', '.join(domain_names())}) or a JSON definition path.")
@click.option("--n", "n_tuples", type=int, required=True, help="Number of tuples.")
@click.option("--action-fraction", type=float, default=0.58, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def gen_dataset(domain_name, n_tuples, action_fraction, seed, out):
    """Generate a JSONL tuple dataset from a domain's transition oracle."""
    resp = ops.generate_dataset(GenerateRequest(
        domain=domain_name, n_tuples=n_tuples, action_fraction=action_fraction, seed=seed))
    _write(Path(out), resp.jsonl)
    click.echo(f"wrote {resp.n_tuples} tuples ({resp.n_action} action, "
               f"{resp.n_no_action} no-action) to {out}")


@main.command("build")
@click.option("--domain", "domain_name", required=True)
@click.option("--dataset", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--agents", "agents_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON array of agents; defaults to the domain's team.")
@click.option("--tau", type=float, default=0.05, show_default=True,
              help="Pose distance threshold for action equivalence (meters).")
@click.option("--weights", default="1,1,1,1", show_default=True,
              help="Cost weights alpha,beta,gamma,mu.")
@click.option("--path-cap", type=int, default=10_000, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Roadmap JSON path; a build report is written alongside.")
def build(domain_name, dataset, agents_path, tau, weights, path_cap, out):
    """Build the roadmap (all layers) from a dataset; reuses the node and
    parallel layers of an existing output roadmap when only the team changed."""
    dataset_jsonl = Path(dataset).read_text(encoding="utf-8")
    agents = _load_agent_models(agents_path) if agents_path else None
    cached = None
    if Path(out).exists():
        try:
            cached = _load_roadmap(out)
        except (json.JSONDecodeError, KeyError):
            log.warning("existing %s is not a roadmap; rebuilding from scratch", out)
    roadmap, resp = ops.build_roadmap(BuildRequest(
        domain=domain_name, dataset_jsonl=dataset_jsonl, agents=agents,
        weights=_parse_weights(weights), tau=tau, path_cap=path_cap), cached=cached)
    _write(Path(out), roadmap.dumps())
    report_path = Path(out).with_suffix(".report.json")
    _write(report_path, resp.report.model_dump_json(indent=2))
    click.echo(f"roadmap {resp.roadmap_id}: {resp.report.nodes} nodes, "
               f"{resp.report.lsr_edges} base edges, {resp.report.plsr_edges} parallel edges, "
               f"{resp.report.clsr_edges} capability edges "
               f"({'parallel layer reused' if resp.report.plsr_cache_hit else 'full build'})")
    click.echo(f"wrote {out} and {report_path}")


@main.command("plan")
@click.option("--roadmap", "roadmap_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--start", "start_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Observation JSON file.")
@click.option("--goal", "goal_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False),
              help="Output directory for the plan and depictions.")
def plan_cmd(roadmap_path, start_path, goal_path, out):
    """Plan between two observations; on no-path, emit a capability report."""
    roadmap = _load_roadmap(roadmap_path)
    resp = ops.plan_on_roadmap(roadmap, PlanRequest(
        start=_load_observation(start_path), goal=_load_observation(goal_path)))
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if resp.found:
        plan_doc = dict(resp.plan)
        depictions = plan_doc.pop("visual_plan")
        paths = []
        for i, dep in enumerate(depictions):
            base = out_dir / f"step_{i:03d}"
            _write(base.with_suffix(".json"), json.dumps(dep["data"], indent=2))
            paths.append(str(base.with_suffix(".json")))
            if dep.get("svg"):
                _write(base.with_suffix(".svg"), dep["svg"])
        plan_doc["depictions"] = paths
        _write(out_dir / "plan.json", json.dumps(plan_doc, indent=2))
        click.echo(f"plan with {plan_doc['n_observations']} observations, "
                   f"total cost {plan_doc['total_cost']:.4f}; wrote {out_dir / 'plan.json'}")
    else:
        _write_suggestion(out_dir, resp.suggestion, resp.suggestion_text or "")
        click.echo("no path found; wrote capability suggestion to "
                   f"{out_dir / 'suggestion.json'}")


@main.command("suggest")
@click.option("--roadmap", "roadmap_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--start", "start_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--goal", "goal_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False))
def suggest_cmd(roadmap_path, start_path, goal_path, out):
    """Diagnose missing capabilities for an unreachable goal."""
    roadmap = _load_roadmap(roadmap_path)
    resp = ops.suggest_on_roadmap(roadmap, PlanRequest(
        start=_load_observation(start_path), goal=_load_observation(goal_path)))
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_suggestion(out_dir, resp.report, resp.text)
    click.echo(resp.text)


@main.command("bench")
@click.option("--roadmap", "roadmap_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--n-pairs", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--agents", "agents_paths", multiple=True, type=click.Path(exists=True, dir_okay=False),
              help="Agent set file; repeat for several sets.")
@click.option("--subset", "subsets", multiple=True,
              help="Comma-separated agent ids drawn from the domain's default team; "
                   "repeat for several sets (e.g. --subset r1 --subset r1,h1).")
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="CSV of per-pair path lengths; a summary CSV is written alongside.")
def bench(roadmap_path, n_pairs, seed, agents_paths, subsets, out):
    """Plan over sampled start/goal pairs for one or more agent sets."""
    roadmap = _load_roadmap(roadmap_path)
    agent_sets: list[list[AgentModel]] = [_load_agent_models(p) for p in agents_paths]
    names = [Path(p).stem for p in agents_paths]
    if subsets:
        domain = get_domain(roadmap.meta["domain"])
        default = {a.id: AgentModel.model_validate(a.to_json()) for a in domain.default_agents()}
        for spec in subsets:
            ids = [s.strip() for s in spec.split(",") if s.strip()]
            missing = [i for i in ids if i not in default]
            if missing:
                raise click.BadParameter(f"unknown agent ids {missing}; "
                                         f"default team: {sorted(default)}")
            agent_sets.append([default[i] for i in ids])
            names.append("+".join(ids))
    req = BenchRequest(n_pairs=n_pairs, seed=seed,
                       agent_sets=agent_sets or None, set_names=names or None)
    resp = ops.bench_on_roadmap(roadmap, req)
    _write(Path(out), resp.csv)
    summary_path = Path(out).with_name(Path(out).stem + "_summary.csv")
    _write(summary_path, resp.summary_csv)
    for s in resp.summary:
        mean = f"{s.mean_length:.2f}" if s.mean_length is not None else "-"
        click.echo(f"{s.name}: {s.paths_found}/{s.n_pairs} paths, "
                   f"no-path {s.no_path}, mean N {mean}")
    click.echo(f"wrote {out} and {summary_path}")


@main.command("export-dot")
@click.option("--roadmap", "roadmap_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--layer", type=click.Choice(["lsr", "plsr", "clsr"]), required=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def export_dot(roadmap_path, layer, out):
    """Export one roadmap layer as GraphViz DOT."""
    roadmap = _load_roadmap(roadmap_path)
    _write(Path(out), ops.export_dot(roadmap, layer))
    click.echo(f"wrote {out}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP planning service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
