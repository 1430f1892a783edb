#!/usr/bin/env python3
"""
Basis Entropy Application
Command dispatch for the toolkit: entropies, extremal searches, discord,
algorithm traces, decoherence sequences and run profiles.
"""

import argparse
import sys
from typing import List, Optional, Sequence

import numpy as np

from algorithm_tracers import (
    GroverConfig,
    ShorConfig,
    decohere_sequence,
    detected_order,
    full_grover_range,
    grover_closed_form,
    grover_trace,
    shor_first_register_trace,
)
from basis_errors import BasisEntropyError, InvalidStateError, RunConfigError
from discord_analysis import (
    MEASURE_B,
    REPORTED_ASYMMETRIC_DISCORD,
    detect_discord,
    discord_grid_oracle,
    discord_variational,
    werner_sweep,
)
from extremal_search import (
    BASIS_CLASSES,
    MAXIMIZE,
    MINIMIZE,
    SEARCH_MODES,
    classify_purity,
    coherence_comparison,
    max_basis_entropy,
    min_basis_entropy,
    parse_basis_class,
)
from measurement import basis_entropy, parse_basis_spec, save_frame, von_neumann_entropy
from quantum_matrix import validate_density
from quantum_states import STATE_KEYWORDS, asymmetric_example, resolve_state, uncorrected_tilted_matrix
from run_profile_manager import TEMPLATES, RunConfig, RunProfileManager
from trace_recorder import DECOHERE_HEADER, GROVER_HEADER, SHOR_HEADER, WERNER_SWEEP_HEADER, TraceRecorder

COMMANDS = ("entropy", "basis-entropy", "extremal", "discord", "detect", "werner-sweep",
            "grover", "shor", "decohere", "classify", "coherence", "profile")


class _Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting with status 2"""

    def error(self, message):
        raise RunConfigError(message)


class BasisEntropyApp:
    """Parses a command line, runs one command and reports the outcome"""

    def __init__(self, profile_manager: Optional[RunProfileManager] = None, out=None, err=None):
        self.profile_manager = profile_manager
        self.out = out if out is not None else sys.stdout
        self.err = err if err is not None else sys.stderr
        self.parser = self.build_parser()

    # ------------------------------------------------------------------
    # Argument parsing
    # ------------------------------------------------------------------

    def build_parser(self) -> argparse.ArgumentParser:
        common = _Parser(add_help=False)
        common.add_argument("--seed", type=int, default=None, help="optimizer seed (default 42)")
        common.add_argument("--starts", type=int, default=None, help="multi-start count (default 64)")
        common.add_argument("--tol", type=float, default=None, help="simplex tolerance (default 1e-10)")
        common.add_argument("--max-evals", dest="max_evals", type=int, default=None,
                            help="evaluation budget per start (default 2000)")
        common.add_argument("--workers", type=int, default=None, help="threads running starts in parallel")
        common.add_argument("--out", default=None, help="output file (CSV or matrix)")
        common.add_argument("--profile", default=None, help="load settings from a saved run profile")

        parser = _Parser(prog="basis-entropy", description="Basis entropy toolkit")
        commands = parser.add_subparsers(dest="command", parser_class=_Parser)

        state_help = f"state keyword ({', '.join(STATE_KEYWORDS)}) or matrix file"

        sub = commands.add_parser("entropy", parents=[common], help="von Neumann entropy")
        sub.add_argument("--input", help=state_help)

        sub = commands.add_parser("basis-entropy", parents=[common], help="entropy gained by one measurement")
        sub.add_argument("--input", help=state_help)
        sub.add_argument("--basis", help="comp | axis:z1,z2,z3 | samelocal:t,y1,y2,y3 | product:AxB | frame:FILE")

        sub = commands.add_parser("extremal", parents=[common], help="max/min basis entropy over a class")
        sub.add_argument("--input", help=state_help)
        sub.add_argument("--mode", choices=SEARCH_MODES, default=None)
        sub.add_argument("--class", dest="basis_class", choices=BASIS_CLASSES, default=None)

        sub = commands.add_parser("discord", parents=[common], help="variational discord of a two-qubit state")
        sub.add_argument("--input", help=state_help)
        sub.add_argument("--side", choices=("A", "B"), default=None, help="measured subsystem (default B)")
        sub.add_argument("--oracle-grid", dest="oracle_grid", action="store_true", default=None)

        sub = commands.add_parser("detect", parents=[common], help="discord detection by minimum basis entropy")
        sub.add_argument("--input", help=state_help)

        sub = commands.add_parser("werner-sweep", parents=[common], help="Werner discord vs basis entropy")
        sub.add_argument("--steps", type=int, default=None, help="z = i/steps for i = 0..steps")

        sub = commands.add_parser("grover", parents=[common], help="Grover basis-entropy trace")
        sub.add_argument("--n", type=int, default=None)
        sub.add_argument("--x0", type=int, default=None)
        group = sub.add_mutually_exclusive_group()
        group.add_argument("--k", type=int, default=None)
        group.add_argument("--full-trace", dest="full_trace", action="store_true", default=None)

        sub = commands.add_parser("shor", parents=[common], help="Shor first-register trace")
        sub.add_argument("--N", dest="N", type=int, default=None)
        sub.add_argument("--x", type=int, default=None)
        sub.add_argument("--t", type=int, default=None)
        sub.add_argument("--L", dest="L", type=int, default=None)

        sub = commands.add_parser("decohere", parents=[common], help="sequence of projective measurements")
        sub.add_argument("--input", help=state_help)
        sub.add_argument("--bases", default=None, help="basis specs separated by ';'")
        sub.add_argument("--paper-exact", dest="paper_exact", action="store_true", default=None)

        sub = commands.add_parser("classify", parents=[common], help="pure / mixed / maximally mixed")
        sub.add_argument("--input", help=state_help)

        sub = commands.add_parser("coherence", parents=[common], help="fixed-basis coherence vs max basis entropy")
        sub.add_argument("--input", help=state_help)

        sub = commands.add_parser("profile", parents=[common], help="manage run profiles")
        sub.add_argument("action", choices=("list", "show", "create", "delete", "run"))
        sub.add_argument("name", nargs="?")
        sub.add_argument("--template", choices=sorted(TEMPLATES), default=None)
        sub.add_argument("--for", dest="target", choices=[name for name in COMMANDS if name != "profile"], default=None,
                         help="command a profile without a template runs")
        sub.add_argument("--description", default="")

        return parser

    def resolve_config(self, args: argparse.Namespace) -> RunConfig:
        """Profile settings (if any) overridden by explicit flags"""
        base = RunConfig(command=args.command)
        if args.profile:
            loaded = self._profiles().load_profile(args.profile)
            if loaded is None:
                raise RunConfigError(f"unknown profile '{args.profile}'")
            base = loaded
            if args.command != "profile":
                base.command = args.command
        overrides = {key: value for key, value in vars(args).items() if key not in ("command", "profile")}
        return base.merged(overrides)

    def _profiles(self) -> RunProfileManager:
        if self.profile_manager is None:
            self.profile_manager = RunProfileManager()
        return self.profile_manager

    # ------------------------------------------------------------------
    # Entry point
    # ------------------------------------------------------------------

    def run(self, argv: Sequence[str]) -> int:
        """Run one command; 0 on success, 1 with a diagnostic on stderr otherwise"""
        try:
            args = self.parser.parse_args(list(argv))
            if args.command is None:
                raise RunConfigError(f"missing command, expected one of {', '.join(COMMANDS)}")
            config = self.resolve_config(args)
            if args.command == "profile":
                lines = self.cmd_profile(args, config)
            else:
                lines = self.dispatch(config)
        except InvalidStateError as e:
            self._fail(f"invalid state: {e}")
            return 1
        except BasisEntropyError as e:
            self._fail(str(e))
            return 1
        except OSError as e:
            self._fail(f"file error: {e}")
            return 1

        for line in lines:
            print(line, file=self.out)
        return 0

    def dispatch(self, config: RunConfig) -> List[str]:
        handlers = {
            "entropy": self.cmd_entropy,
            "basis-entropy": self.cmd_basis_entropy,
            "extremal": self.cmd_extremal,
            "discord": self.cmd_discord,
            "detect": self.cmd_detect,
            "werner-sweep": self.cmd_werner_sweep,
            "grover": self.cmd_grover,
            "shor": self.cmd_shor,
            "decohere": self.cmd_decohere,
            "classify": self.cmd_classify,
            "coherence": self.cmd_coherence,
        }
        if config.command not in handlers:
            raise RunConfigError(f"unknown command '{config.command}'")
        return handlers[config.command](config)

    def _fail(self, message: str):
        print(f"❌ {message}", file=self.err)

    def _notice(self, message: str):
        print(message, file=self.err)

    @staticmethod
    def _require(config: RunConfig, *names: str):
        for name in names:
            if getattr(config, name) is None:
                raise RunConfigError(f"--{name.replace('_', '-')} is required for '{config.command}'")

    def _state(self, config: RunConfig):
        self._require(config, "input")
        return resolve_state(config.input)

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def cmd_entropy(self, config: RunConfig) -> List[str]:
        return [f"{von_neumann_entropy(self._state(config)):.6f}"]

    def cmd_basis_entropy(self, config: RunConfig) -> List[str]:
        rho = self._state(config)
        self._require(config, "basis")
        basis = parse_basis_spec(config.basis, rho.dim)
        return [f"{basis_entropy(rho, basis):.6f}"]

    def cmd_extremal(self, config: RunConfig) -> List[str]:
        rho = self._state(config)
        basis_class = parse_basis_class(config.basis_class, rho.dim)
        search = {MAXIMIZE: max_basis_entropy, MINIMIZE: min_basis_entropy}[config.mode]
        result = search(rho, basis_class, config.optimizer_config())
        if config.out:
            save_frame(config.out, result.basis)
            self._notice(f"💾 Wrote optimal frame to {config.out}")
        if not result.converged:
            self._notice("⚠️  Search did not converge within the evaluation budget")
        return [f"{result.value:.6f}"]

    def cmd_discord(self, config: RunConfig) -> List[str]:
        rho = self._state(config)
        result = discord_variational(rho, config.side, config.optimizer_config())
        axis = result.optimal_axis
        lines = [
            f"delta {result.delta:.6f}",
            f"mutual_information {result.mutual_information:.6f}",
            f"measured_mutual {result.measured_mutual:.6f}",
            f"axis {axis.z1:.6f} {axis.z2:.6f} {axis.z3:.6f}",
        ]
        if config.oracle_grid:
            oracle = discord_grid_oracle(rho, config.side)
            lines.append(f"oracle_delta {oracle.delta:.6f}")
        if result.side == MEASURE_B and np.allclose(rho.matrix, asymmetric_example().matrix, atol=1e-12):
            printed = " and ".join(f"{value:.4f}" for value in REPORTED_ASYMMETRIC_DISCORD)
            self._notice(f"⚠️  Published values for this state disagree ({printed}); "
                         f"the computed value is {result.delta:.6f}")
        return lines

    def cmd_detect(self, config: RunConfig) -> List[str]:
        detection = detect_discord(self._state(config), config.optimizer_config())
        return [f"{detection.tag} {detection.min_basis_entropy:.6f}"]

    def cmd_werner_sweep(self, config: RunConfig) -> List[str]:
        z_values = [index / config.steps for index in range(config.steps + 1)]
        recorder = TraceRecorder(WERNER_SWEEP_HEADER)
        recorder.start_recording("werner-sweep")
        rows = werner_sweep(z_values, config.optimizer_config(),
                            callback=lambda message, level: self._notice(f"🔄 {message}"))
        for row in rows:
            recorder.add_row(row.z, row.discord, row.min_basis_entropy)
        return self._finish_table(recorder, config,
                                  lambda row: f"{row[0]:.6f} {row[1]:.6f} {row[2]:.6f}")

    def cmd_grover(self, config: RunConfig) -> List[str]:
        self._require(config, "n")
        if config.k is not None:
            records = [grover_closed_form(GroverConfig(n=config.n, x0=config.x0, k=config.k))]
        elif config.full_trace:
            records = grover_trace(config.n, full_grover_range(config.n), x0=config.x0)
        else:
            records = grover_trace(config.n, x0=config.x0)

        recorder = TraceRecorder(GROVER_HEADER)
        recorder.start_recording(f"grover-n{config.n}")
        for record in records:
            recorder.add_row(record.step_index, record.auxiliary, record.basis_entropy)
        cfg = GroverConfig(n=config.n, x0=config.x0)
        self._notice(f"📊 k_max = {cfg.k_max}, desired iterations = {cfg.desired_iterations}")
        return self._finish_table(recorder, config, lambda row: f"{row[0]} {row[1]:.6f} {row[2]:.6f}")

    def cmd_shor(self, config: RunConfig) -> List[str]:
        self._require(config, "N", "x", "t")
        cfg = ShorConfig(N=config.N, x=config.x, t=config.t, L=config.L)
        records = shor_first_register_trace(cfg)

        recorder = TraceRecorder(SHOR_HEADER)
        recorder.start_recording(f"shor-{cfg.N}")
        for record in records:
            recorder.add_row(record.step_index, record.basis_entropy)
        lines = self._finish_table(recorder, config, lambda row: f"{row[0]} {row[1]:.6f}")
        lines.append(f"order {detected_order(records)}")
        return lines

    def cmd_decohere(self, config: RunConfig) -> List[str]:
        if config.paper_exact:
            self._notice("⚠️  Requested the printed starting matrix (off-diagonal sqrt(3)/2)")
            try:
                validate_density(uncorrected_tilted_matrix())
            except InvalidStateError as e:
                self._notice(f"⚠️  Rejected: {e}; continuing with the corrected pure state")
            config = config.merged({"input": "tilted"})
        self._require(config, "bases")
        rho = self._state(config)
        bases = [parse_basis_spec(spec.strip(), rho.dim) for spec in config.bases.split(";") if spec.strip()]
        trace = decohere_sequence(rho, bases, config.optimizer_config())

        recorder = TraceRecorder(DECOHERE_HEADER)
        recorder.start_recording("decohere")
        for _, record in trace.steps:
            recorder.add_row(record.step_index, record.basis_entropy, record.auxiliary)
        lines = self._finish_table(recorder, config, lambda row: f"{row[0]} {row[1]:.6f} {row[2]:.6f}")
        lines.append(trace.classification)
        return lines

    def cmd_classify(self, config: RunConfig) -> List[str]:
        return [classify_purity(self._state(config), config.optimizer_config())]

    def cmd_coherence(self, config: RunConfig) -> List[str]:
        coherence, best = coherence_comparison(self._state(config), config.optimizer_config())
        return [f"coherence {coherence:.6f}", f"max_basis_entropy {best:.6f}"]

    def cmd_profile(self, args: argparse.Namespace, config: RunConfig) -> List[str]:
        manager = self._profiles()
        if args.action == "list":
            return [f"{name} {info.get('command', '')}".rstrip()
                    for name, info in sorted(manager.get_all_profiles_basic_info().items())]

        if not args.name:
            raise RunConfigError(f"profile {args.action} needs a NAME")

        if args.action == "create":
            if args.template:
                overrides = {key: value for key, value in vars(args).items()
                             if key not in ("command", "profile", "action", "name",
                                            "template", "description", "target")}
                created = manager.create_template_profile(args.template, args.name, overrides, args.description)
            elif args.target:
                created = manager.create_profile(args.name, config.merged({"command": args.target}), args.description)
            else:
                raise RunConfigError("profile create needs --template or --for COMMAND")
            if not created:
                raise RunConfigError(f"profile '{args.name}' could not be written")
            return [f"created {args.name}"]

        if args.name not in manager.get_profile_names():
            raise RunConfigError(f"unknown profile '{args.name}'")

        if args.action == "show":
            loaded = manager.load_profile(args.name)
            lines = [f"{key} {value}" for key, value in loaded.to_dict().items() if value is not None]
            description = manager.get_profile_description(args.name)
            if description:
                lines.append(f"description {description}")
            return lines
        if args.action == "delete":
            if not manager.delete_profile(args.name):
                raise RunConfigError(f"profile '{args.name}' could not be deleted")
            return [f"deleted {args.name}"]

        loaded = manager.load_profile(args.name)
        return self.dispatch(loaded)

    # ------------------------------------------------------------------

    def _finish_table(self, recorder: TraceRecorder, config: RunConfig, render) -> List[str]:
        """Write the CSV when --out is given, otherwise render the rows for stdout"""
        if config.out:
            recorder.set_status_callback(lambda message, level: self._notice(message))
            recorder.finish_recording(config.out)
            return []
        return [render(row) for row in recorder.finish_recording()]


def run(argv: Sequence[str]) -> int:
    return BasisEntropyApp().run(argv)
