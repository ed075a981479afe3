export {
  BoundTokenizer,
  type FitOptions,
} from "./tokenizer.js";
export {
  type ConfigDocument,
  FORMAT_VERSION,
  loadConfigFile,
  parseConfigText,
  saveConfigFile,
  serializeConfig,
} from "./config.js";
export { cliCommand, runCli, type CliResult } from "./cli.js";
export { SplitMix64, isPrime, inverseMod, randomInvertible } from "./math.js";
export * from "./errors.js";
