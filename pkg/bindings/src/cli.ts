/**
 * Spawning the core CLI. The command defaults to `python3 -m modtok` and can
 * be overridden with the MODTOK_CLI environment variable (split on spaces),
 * e.g. MODTOK_CLI=modtok when the console script is on PATH.
 */

import { spawnSync } from "node:child_process";

import { mapCliFailure } from "./errors.js";

export function cliCommand(): string[] {
  const override = process.env.MODTOK_CLI;
  if (override && override.trim() !== "") {
    return override.trim().split(/\s+/);
  }
  return ["python3", "-m", "modtok"];
}

export interface CliResult {
  stdout: string;
  stderr: string;
}

/** Run the CLI, returning its output or throwing the mapped host exception. */
export function runCli(args: string[]): CliResult {
  const [command, ...prefix] = cliCommand();
  const proc = spawnSync(command, [...prefix, ...args], {
    encoding: "utf8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (proc.error) {
    throw proc.error;
  }
  if (proc.status !== 0) {
    throw mapCliFailure(proc.status ?? -1, proc.stderr ?? "");
  }
  return { stdout: proc.stdout ?? "", stderr: proc.stderr ?? "" };
}
