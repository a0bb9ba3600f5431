#!/usr/bin/env python3
"""
Command-line interface for the pulsed Kerr resonator simulator
Runs builtin or file scenarios with explicit solver selection
"""

import asyncio
import argparse
import sys
from pathlib import Path

from config import logger, DEFAULT_MAX_CONCURRENT, EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR, EXIT_OK
from scenarios.config import SOLVER_CHOICES, apply_overrides, resolve_scenario
from scenarios.runner import ScenarioRunner, generate_builtins, list_scenarios


def show_scenarios():
    """Print the builtin scenario catalog"""
    catalog = list_scenarios()
    print(f"\n🧪 Builtin scenarios ({len(catalog)} total):")
    for i, entry in enumerate(catalog, 1):
        line = (f"  {i:2}. {entry['name']:<16} chi={entry['chi']:<5} Omega={entry['omega']:<5} "
                f"T={entry['width_T']:<4} tau={entry['period_tau']:<4} n_th={entry['n_th']}")
        if entry.get("sweep"):
            values = ", ".join(str(v) for v in entry["sweep"]["values"])
            line += f"  sweep {entry['sweep']['path']} over [{values}]"
        print(line)
        print(f"      {entry['description']}")
    print("\nUse 'run NAME' to simulate a scenario or 'generate-builtins DIR' to export them as YAML.")


async def run_scenario(args) -> int:
    scenario = resolve_scenario(args.config)
    scenario = apply_overrides(
        scenario,
        solver=args.solver,
        seed=args.seed,
        n_traj=args.n_traj,
        output_dir=args.output_dir,
        dim=args.dim,
    )

    print(f"🔄 Running scenario '{scenario.name}' with {', '.join(scenario.solvers)}...")
    runner = ScenarioRunner(max_concurrent=args.max_concurrent)
    await runner.initialize()
    report = await runner.run(scenario)

    print(f"\n✅ Scenario '{scenario.name}' completed!")
    for summary in report.summaries:
        label = summary.solver
        if summary.sweep_value is not None:
            label += f" [{summary.sweep_path}={summary.sweep_value}]"
        g2 = "undefined" if summary.g2_at_peak is None else f"{summary.g2_at_peak:.3f}"
        print(f"📈 {label}: max <n> = {summary.max_mean_n:.4f} at t = {summary.max_mean_n_time:.2f}, "
              f"g2 at peak = {g2}, max P1 = {summary.max_p1:.4f}")
        if summary.wall_clock_seconds is not None:
            print(f"   ⏱️  {summary.wall_clock_seconds:.1f}s")
    print(f"📁 Output directory: {scenario.output.directory}")
    print(f"📊 Files written: {len(report.files) + 1}")
    return EXIT_OK


async def main():
    """Main function with command-line interface"""
    parser = argparse.ArgumentParser(
        description="Simulate a pulsed, thermal, dissipative Kerr resonator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    # Run a builtin scenario with the master-equation solver
    python src/cli.py run fig1-onephoton

    # Cross-check both solvers with a fixed seed and trajectory count
    python src/cli.py run fig2-twophoton --solver both --seed 7 --n-traj 1000

    # Run a scenario file into a custom directory with a smaller truncation
    python src/cli.py run my_scenario.yaml --output-dir results/custom --dim 30

    # Show the builtin scenarios
    python src/cli.py list

    # Export the builtin scenarios as editable YAML files
    python src/cli.py generate-builtins scenarios/
        """
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run a scenario file or builtin scenario")
    run_parser.add_argument("config", help="Path to a scenario YAML file or a builtin scenario name")
    run_parser.add_argument("--solver", choices=SOLVER_CHOICES,
                            help="Solver to use (overrides the scenario)")
    run_parser.add_argument("--seed", type=int, help="Base seed for the trajectory ensemble")
    run_parser.add_argument("--n-traj", type=int, help="Number of trajectories")
    run_parser.add_argument("--output-dir", type=Path, help="Directory for result files")
    run_parser.add_argument("--dim", type=int, help="Fock-space truncation dimension")
    run_parser.add_argument("--max-concurrent", type=int, default=DEFAULT_MAX_CONCURRENT,
                            help="Scenario points solved concurrently")

    subparsers.add_parser("list", help="List the builtin scenarios")

    generate_parser = subparsers.add_parser("generate-builtins", help="Write the builtin scenarios as YAML files")
    generate_parser.add_argument("directory", type=Path, help="Target directory")

    args = parser.parse_args()

    if args.command == "list":
        show_scenarios()
        return

    if args.command == "generate-builtins":
        written = generate_builtins(args.directory)
        print(f"✅ Wrote {len(written)} scenario files to {args.directory}")
        return

    try:
        sys.exit(await run_scenario(args))
    except ValueError as e:
        print(f"❌ Invalid request: {e}")
        sys.exit(EXIT_CONFIG_ERROR)
    except RuntimeError as e:
        print(f"❌ Simulation failed: {e}")
        sys.exit(EXIT_NUMERICAL_ERROR)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        sys.exit(EXIT_NUMERICAL_ERROR)


if __name__ == "__main__":
    asyncio.run(main())
