#!/usr/bin/env python3
"""
Command-line driver for the cuspidal foliation resolution engine
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from agents import DivisorGraphAgent, FoliationAgent, PresentationAgent, ReportAgent, ResolutionAgent
from config import COMMANDS, LOG_FILE, REPORT_DIR, RunConfig
from diagram_generator import DivisorDiagramGenerator
from errors import EXIT_INVARIANT, EXIT_OK, EXIT_VALIDATION, EngineError, exit_status_for
from input_loader import parse_input
from trace_store import dumps, emit_outputs, load_trace, replay as replay_trace, save_trace


def configure_logging(log_file: str = LOG_FILE, verbose: bool = False):
    logging.basicConfig(
        filename=log_file,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
        force=True,
    )


def _emit(text: str, path: Optional[str] = None):
    """Write an artifact to a file, or to stdout when no path is given"""
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text if text.endswith("\n") else text + "\n")
    print(f"   💾 Written: {path}", file=sys.stderr)


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


class FoliationEngineApp:
    """Runs one command through the staged pipeline"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.agents = {
            'foliation': FoliationAgent(),
            'resolution': ResolutionAgent(guard=config.guard),
            'divisor': DivisorGraphAgent(DivisorDiagramGenerator(os.path.join(config.report_dir, 'diagrams'))),
            'presentation': PresentationAgent(),
            'report': ReportAgent(reports_dir=config.report_dir),
        }

    def _load(self, path: str, validate: bool = True):
        print(f"📥 Step 1: Loading {path}", file=sys.stderr)
        return parse_input(path, field_order=self.config.field_order, truncate=self.config.truncate,
                           validate=validate)

    def _resolve(self, path: str) -> Dict[str, Any]:
        data = self._load(path)
        print("🧮 Step 2: Resolving singularities", file=sys.stderr)
        trace, shapes = self.agents['resolution'].run(data)
        return {'name': _stem(path), 'data': data, 'trace': trace, 'shapes': shapes}

    def check(self) -> int:
        data = self._load(self.config.input, validate=False)
        print("🔎 Step 2: Pre-resolution checks", file=sys.stderr)
        verdict = self.agents['foliation'].check(data)
        _emit(self.agents['foliation'].verdict_table(verdict), self.config.out)
        if not verdict['accepted']:
            return EXIT_VALIDATION
        return EXIT_OK if verdict['passed'] else EXIT_INVARIANT

    def _extras(self, all_data: Dict[str, Any]) -> Dict[str, Any]:
        return {'shapes': all_data['shapes'].to_json(), 'truncate': self.config.truncate}

    def resolve(self) -> int:
        all_data = self._resolve(self.config.input)
        trace = all_data['trace']
        _emit(emit_outputs(trace, extra=self._extras(all_data)), self.config.out)
        return EXIT_OK

    def replay(self) -> int:
        print(f"🔁 Step 1: Replaying charts of {self.config.input}", file=sys.stderr)
        trace = load_trace(self.config.input)
        count = replay_trace(trace)
        _emit(f"replayed {count} chart(s) of {trace.input.p}/{trace.input.q}: consistent", self.config.out)
        return EXIT_OK

    def graph(self) -> int:
        all_data = self._resolve(self.config.input)
        print("🕸️ Step 3: Building the divisor graph", file=sys.stderr)
        divisor = self.agents['divisor'].build(all_data['trace'])
        path = self.config.dot_out or self.config.out
        _emit(self.agents['divisor'].dot(divisor, title=f"divisor_{all_data['name']}"), path)
        return EXIT_OK

    def pi1(self) -> int:
        all_data = self._resolve(self.config.input)
        print("🧵 Step 3: Computing pi1 presentations", file=sys.stderr)
        pi1 = self.agents['presentation'].compute(all_data['trace'])
        _emit(pi1.render())
        if self.config.out:
            _emit(dumps(pi1.to_json()), self.config.out)
        return EXIT_OK

    def _report_one(self, path: str) -> int:
        verdict = self.agents['foliation'].check(self._load(path, validate=False))
        table = self.agents['foliation'].verdict_table(verdict)
        if not verdict['accepted']:
            self.agents['report'].save_html_report(
                self.agents['report'].generate_report({'name': _stem(path), 'verdict_table': table}), _stem(path))
            return EXIT_VALIDATION
        all_data = self._resolve(path)
        all_data['verdict_table'] = table
        print("🕸️ Step 3: Building the divisor graph", file=sys.stderr)
        all_data['divisor'] = self.agents['divisor'].build(all_data['trace'])
        print("🧵 Step 4: Computing pi1 presentations", file=sys.stderr)
        all_data['pi1'] = self.agents['presentation'].compute(all_data['trace'])
        print("📊 Step 5: Writing artifacts", file=sys.stderr)
        name = all_data['name']
        single = len(self.config.inputs) == 1
        trace_path = self.config.out if single and self.config.out else os.path.join(
            self.config.report_dir, f"{name}_trace.json")
        save_trace(all_data['trace'], trace_path, {
            **self._extras(all_data),
            'divisor': all_data['divisor'].to_json(),
            'pi1': all_data['pi1'].to_json(),
        })
        self.agents['divisor'].save_dot(all_data['divisor'], name,
                                        self.config.dot_out if single else None)
        markdown_text = self.agents['report'].generate_report(all_data)
        self.agents['report'].save_html_report(markdown_text, name)
        return EXIT_OK

    def report(self) -> int:
        statuses: List[int] = []
        for path in self.config.inputs:
            try:
                statuses.append(self._report_one(path))
            except EngineError as e:
                logging.error(f"report for {path} failed: {e}")
                print(f"   ❌ {path}: {e}", file=sys.stderr)
                statuses.append(exit_status_for(e))
        return max(statuses)

    def run(self) -> int:
        return getattr(self, self.config.command)()


def run_cli(config: RunConfig) -> int:
    try:
        status = FoliationEngineApp(config).run()
    except EngineError as e:
        logging.error(f"{config.command} failed: {type(e).__name__}: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        clauses = getattr(e, 'clauses', None)
        if clauses:
            print(f"   violated: {'; '.join(clauses)}", file=sys.stderr)
        return exit_status_for(e)
    except Exception as e:
        logging.error(f"{config.command} failed with an unexpected error: {e}", exc_info=True)
        print(f"❌ Internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    print(f"✅ {config.command} finished with status {status}", file=sys.stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Resolution of cuspidal quasi-homogeneous foliations")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", action="append", default=[], dest="inputs", required=True,
                        help="input JSON document (repeatable for report)")
    parser.add_argument("--out", help="output file for the command's main artifact")
    parser.add_argument("--dot-out", help="output file for the DOT dual graph")
    parser.add_argument("--report-dir", default=REPORT_DIR)
    parser.add_argument("--guard", type=int, help="override the blow-up step guard")
    parser.add_argument("--field-order", type=int, help="override the cyclotomic field order M")
    parser.add_argument("--truncate", type=int, help="drop terms of G above this total degree")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--log-file", default=LOG_FILE)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command, inputs=args.inputs, out=args.out, dot_out=args.dot_out,
            report_dir=args.report_dir, truncate=args.truncate, guard=args.guard,
            field_order=args.field_order, verbose=args.verbose, log_file=args.log_file,
        )
    except ValueError as e:
        parser.error(str(e))
    configure_logging(config.log_file, config.verbose)
    return run_cli(config)


if __name__ == "__main__":
    sys.exit(main())
