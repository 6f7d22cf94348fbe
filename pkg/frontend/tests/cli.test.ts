import { execFileSync, spawnSync } from "child_process";
import { existsSync, mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { dirname, join } from "path";
import { fileURLToPath } from "url";

import { beforeAll, describe, expect, it } from "vitest";

const here = dirname(fileURLToPath(import.meta.url));
const cliJs = join(here, "..", "dist", "cli.js");

let dir: string;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "plots-cli-"));
});

function writeSpec(name: string, doc: unknown): string {
  const path = join(dir, name);
  writeFileSync(path, JSON.stringify(doc));
  return path;
}

describe("plot CLI (built dist)", () => {
  it("renders a figure from a spec file", () => {
    const csv = join(dir, "curve.csv");
    writeFileSync(
      csv,
      "snr_db,mean_rate_bits,std_error,trials\n0,1,0.1,10\n10,2,0.1,10\n",
    );
    const out = join(dir, "fig.png");
    const spec = writeSpec("ok.json", {
      input_csvs: [{ path: csv, label: "curve" }],
      title: "demo",
      output_path: out,
    });
    const stdout = execFileSync("node", [cliJs, "--spec", spec], {
      encoding: "utf-8",
    });
    expect(stdout).toContain("fig.png");
    expect(stdout).toContain("fig.svg");
    expect(existsSync(out)).toBe(true);
    expect(existsSync(join(dir, "fig.svg"))).toBe(true);
  });

  it("exits nonzero on schema violations, naming the column", () => {
    const csv = join(dir, "bad.csv");
    writeFileSync(csv, "snr,mean_rate_bits,std_error,trials\n0,1,0.1,10\n");
    const spec = writeSpec("bad.json", {
      input_csvs: [{ path: csv, label: "x" }],
      title: "demo",
      output_path: join(dir, "bad.png"),
    });
    const proc = spawnSync("node", [cliJs, "--spec", spec], {
      encoding: "utf-8",
    });
    expect(proc.status).toBe(2);
    expect(proc.stderr).toContain("snr_db");
  });

  it("exits nonzero without --spec", () => {
    const proc = spawnSync("node", [cliJs], { encoding: "utf-8" });
    expect(proc.status).toBe(1);
    expect(proc.stderr).toContain("usage");
  });

  it("exits nonzero on a missing spec file", () => {
    const proc = spawnSync("node", [cliJs, "--spec", join(dir, "nope.json")], {
      encoding: "utf-8",
    });
    expect(proc.status).toBe(2);
  });
});
