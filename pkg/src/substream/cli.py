"""Command-line surface: stats, build, query, closeness, bench, serve.

The CLI is a thin client of the library; all algorithmic work and
parallelism live in the library modules.  Exit codes: 0 success, 1 usage
error, 2 data error, 3 internal invariant violation.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import closeness as closeness_mod
from . import index as index_mod
from .errors import DataError, InvariantError, ParameterError
from .stream import INFINITY, EdgeStream, Interval, parse_edge_list, stream_stats


def _echo_config(cmd: str, **params) -> None:
    rendered = " ".join(f"{k.replace('_', '-')}={v}" for k, v in params.items())
    click.echo(f"# substream {cmd} {rendered}", err=True)


def _load_stream(path: str, default_transition: int, undirected: bool) -> EdgeStream:
    text = Path(path).read_text()
    try:
        return parse_edge_list(text, default_transition, undirected)
    except DataError as e:
        raise DataError(f"{path}: {e}") from None


def _interval(s: EdgeStream, from_time: int | None, to_time: int | None) -> Interval:
    life = s.lifetime
    a = life.a if from_time is None else from_time
    b = life.b if to_time is None else to_time
    return Interval(a, b)


def _fmt_value(v: int) -> str:
    return "inf" if v == INFINITY else str(v)


def _effective_h(h: int, k: int, m: int) -> int:
    # keep the sketch-size precondition h*k <= m satisfiable from the CLI
    return max(1, min(h, m // k)) if k <= m else h


_input_options = [
    click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False)),
    click.option("--default-transition", type=int, default=1, show_default=True),
    click.option("--undirected", is_flag=True, default=False),
]


def _with(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return deco


@click.group()
def cli() -> None:
    """Substream index toolkit for temporal graph distance queries."""


@cli.command()
@_with(_input_options)
@click.option("--threads", type=int, default=1, show_default=True)
def stats(input_path, default_transition, undirected, threads) -> None:
    """Print dataset statistics including reachable-stream sizes."""
    if not input_path:
        raise click.UsageError("--input is required")
    _echo_config(
        "stats", input=input_path, default_transition=default_transition,
        undirected=undirected, threads=threads,
    )
    s = _load_stream(input_path, default_transition, undirected)
    st = stream_stats(s, threads=threads)
    click.echo(f"vertices          {st.vertices}")
    click.echo(f"edges             {st.edges}")
    click.echo(f"timestamps        {st.distinct_timestamps}")
    click.echo(f"avg reach edges   {st.avg_reach_edges:.1f}")
    click.echo(f"max reach edges   {st.max_reach_edges}")


@cli.command()
@_with(_input_options)
@click.option("--index", "index_path", type=click.Path(dir_okay=False), required=True)
@click.option("--algorithm", type=click.Choice([index_mod.GREEDY, index_mod.SKETCH]),
              default=index_mod.SKETCH, show_default=True)
@click.option("--k", type=int, default=index_mod.DEFAULT_K, show_default=True)
@click.option("--h", type=int, default=8, show_default=True)
@click.option("--batch-size", type=int, default=0, help="0 selects the default rule")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True)
def build(input_path, default_transition, undirected, index_path, algorithm,
          k, h, batch_size, seed, threads) -> None:
    """Build an index and write it as a binary file."""
    if not input_path:
        raise click.UsageError("--input is required")
    _echo_config(
        "build", input=input_path, index=index_path, algorithm=algorithm, k=k, h=h,
        batch_size=batch_size, seed=seed, threads=threads,
        default_transition=default_transition, undirected=undirected,
    )
    s = _load_stream(input_path, default_transition, undirected)
    t0 = time.perf_counter()
    if algorithm == index_mod.GREEDY:
        ix = index_mod.build_greedy(s, k)
    else:
        batch = batch_size if batch_size > 0 else None
        h_eff = _effective_h(h, k, s.m)
        if h_eff != h:
            click.echo(f"# sketch size reduced to h={h_eff} to satisfy h*k <= m", err=True)
        ix = index_mod.build_parallel(s, k, h=h_eff, batch=batch, seed=seed, threads=threads)
    build_seconds = time.perf_counter() - t0
    blob = index_mod.serialize(ix)
    Path(index_path).write_bytes(blob)
    click.echo(f"build seconds     {build_seconds:.3f}")
    click.echo(f"index size        {ix.size()} edges, {len(blob)} bytes")
    click.echo("substream sizes   " + " ".join(str(x) for x in ix.substream_sizes()))


@cli.command()
@click.option("--index", "index_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--source", required=True, help="source vertex label")
@click.option("--from", "from_time", type=int, default=None)
@click.option("--to", "to_time", type=int, default=None)
@click.option("--kind", type=click.Choice(["ea", "fastest"]), default="fastest", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def query(index_path, source, from_time, to_time, kind, fmt) -> None:
    """Run one SSAD query against a stored index."""
    _echo_config(
        "query", index=index_path, source=source, from_time=from_time,
        to_time=to_time, kind=kind, format=fmt,
    )
    ix = index_mod.deserialize(Path(index_path).read_bytes())
    base = ix.base
    src = base.vertex_id(source)
    tau = _interval(base, from_time, to_time)
    table = ix.query(src, tau, kind)
    values = table.duration if kind == "fastest" else table.arrival
    if fmt == "json":
        obj = {
            "source": source,
            "kind": kind,
            "interval": [tau.a, tau.b],
            "values": {
                base.labels[v]: (None if int(values[v]) == INFINITY else int(values[v]))
                for v in range(base.n)
            },
        }
        click.echo(json.dumps(obj))
    else:
        click.echo("vertex,value")
        for v in range(base.n):
            click.echo(f"{base.labels[v]},{_fmt_value(int(values[v]))}")


@cli.command()
@_with(_input_options)
@click.option("--index", "index_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--engine", type=click.Choice(["index", "fullstream", "oracle"]),
              default="index", show_default=True)
@click.option("--k", type=int, default=index_mod.DEFAULT_K, show_default=True)
@click.option("--h", type=int, default=8, show_default=True)
@click.option("--batch-size", type=int, default=0)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--from", "from_time", type=int, default=None)
@click.option("--to", "to_time", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "output_path", type=click.Path(dir_okay=False), default=None)
def closeness(input_path, default_transition, undirected, index_path, engine, k, h,
              batch_size, seed, threads, from_time, to_time, fmt, output_path) -> None:
    """Rank all vertices by harmonic temporal closeness."""
    _echo_config(
        "closeness", input=input_path, index=index_path, engine=engine, k=k, h=h,
        batch_size=batch_size, seed=seed, threads=threads, from_time=from_time,
        to_time=to_time, format=fmt, output=output_path,
    )
    build_seconds = 0.0
    if engine == "index":
        if index_path:
            ix = index_mod.deserialize(Path(index_path).read_bytes())
        elif input_path:
            s = _load_stream(input_path, default_transition, undirected)
            t0 = time.perf_counter()
            batch = batch_size if batch_size > 0 else None
            h_eff = _effective_h(h, k, s.m)
            if h_eff != h:
                click.echo(f"# sketch size reduced to h={h_eff} to satisfy h*k <= m", err=True)
            ix = index_mod.build_parallel(s, k, h=h_eff, batch=batch, seed=seed, threads=threads)
            build_seconds = time.perf_counter() - t0
        else:
            raise click.UsageError("engine=index needs --index or --input")
        base = ix.base
        tau = _interval(base, from_time, to_time)
        t0 = time.perf_counter()
        ranking = closeness_mod.closeness_via_index(ix, tau, threads=threads)
        query_seconds = time.perf_counter() - t0
        labels = base.labels
    else:
        if not input_path:
            raise click.UsageError(f"engine={engine} needs --input")
        s = _load_stream(input_path, default_transition, undirected)
        tau = _interval(s, from_time, to_time)
        fn = closeness_mod.closeness_baseline if engine == "fullstream" else closeness_mod.closeness_oracle
        t0 = time.perf_counter()
        ranking = fn(s, tau, threads=threads)
        query_seconds = time.perf_counter() - t0
        labels = s.labels

    total = build_seconds + query_seconds
    click.echo(
        f"# timing: build_seconds={build_seconds:.3f} query_seconds={query_seconds:.3f} "
        f"total_seconds={total:.3f}",
        err=True,
    )
    if fmt == "json":
        payload = json.dumps(
            {
                "engine": engine,
                "interval": [tau.a, tau.b],
                "timing": {
                    "build_seconds": build_seconds,
                    "query_seconds": query_seconds,
                    "total_seconds": total,
                },
                "ranking": ranking.to_records(labels),
            }
        )
    else:
        payload = ranking.to_csv(labels)
    if output_path:
        Path(output_path).write_text(payload)
    else:
        click.echo(payload, nl=False)


@cli.command()
@_with(_input_options)
@click.option("--k", "k_list", default="8,32,128", show_default=True,
              help="comma-separated substream counts")
@click.option("--h", type=int, default=8, show_default=True)
@click.option("--batch-size", type=int, default=0)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--from", "from_time", type=int, default=None)
@click.option("--to", "to_time", type=int, default=None)
def bench(input_path, default_transition, undirected, k_list, h, batch_size, seed,
          threads, from_time, to_time) -> None:
    """Sweep k and emit a CSV of index size versus closeness timing trade-offs."""
    if not input_path:
        raise click.UsageError("--input is required")
    _echo_config(
        "bench", input=input_path, k=k_list, h=h, batch_size=batch_size, seed=seed,
        threads=threads, from_time=from_time, to_time=to_time,
    )
    try:
        ks = [int(x) for x in k_list.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError(f"--k expects comma-separated integers, got {k_list!r}")
    s = _load_stream(input_path, default_transition, undirected)
    tau = _interval(s, from_time, to_time)

    t0 = time.perf_counter()
    closeness_mod.closeness_baseline(s, tau, threads=threads)
    baseline_seconds = time.perf_counter() - t0

    click.echo(
        "k,build_seconds,index_bytes,size_edges,total_query_work,"
        "query_seconds,total_seconds,baseline_seconds,speedup"
    )
    batch = batch_size if batch_size > 0 else None
    for k in ks:
        t0 = time.perf_counter()
        ix = index_mod.build_parallel(
            s, k, h=_effective_h(h, k, s.m), batch=batch, seed=seed, threads=threads
        )
        build_seconds = time.perf_counter() - t0
        blob_len = len(index_mod.serialize(ix))
        t0 = time.perf_counter()
        closeness_mod.closeness_via_index(ix, tau, threads=threads)
        query_seconds = time.perf_counter() - t0
        total = build_seconds + query_seconds
        click.echo(
            f"{k},{build_seconds:.4f},{blob_len},{ix.size()},{ix.total_query_work()},"
            f"{query_seconds:.4f},{total:.4f},{baseline_seconds:.4f},"
            f"{baseline_seconds / total:.2f}"
        )


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port) -> None:
    """Run the HTTP service wrapping the library."""
    import uvicorn

    from .service.app import app

    _echo_config("serve", host=host, port=port)
    uvicorn.run(app, host=host, port=port)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return int(e.exit_code)
    except click.ClickException as e:
        e.show()
        return 1
    except ParameterError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except (DataError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        return 2
    except InvariantError as e:
        click.echo(f"internal error: {e}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
