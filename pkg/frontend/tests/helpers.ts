import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

export const RUNTIME_DIR = join(dirname(fileURLToPath(import.meta.url)), ".runtime");

export function baseUrl(): string {
  return readFileSync(join(RUNTIME_DIR, "base_url.txt"), "utf-8").trim();
}

export function operatorToken(): string {
  return readFileSync(join(RUNTIME_DIR, "token.txt"), "utf-8").trim();
}

export interface Fixtures {
  polls: { hash: string; question: string }[];
  trust_domain: string;
  statements_total: number;
}

export function fixtures(): Fixtures {
  return JSON.parse(readFileSync(join(RUNTIME_DIR, "fixtures.json"), "utf-8"));
}
