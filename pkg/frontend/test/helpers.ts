import { readFileSync } from "fs";
import { join } from "path";

// vitest runs with cwd at the package root
const FIXTURES = join(process.cwd(), "test", "fixtures");

export function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

export function fixturePath(name: string): string {
  return join(FIXTURES, name);
}
