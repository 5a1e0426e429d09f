import { execFileSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { readCsv } from "../src/csv.js";
import { renderRecipe } from "../src/render.js";
import { RECIPES } from "../src/recipes.js";

const FIXTURES = join(__dirname, "fixtures");
const CLI = join(__dirname, "..", "dist", "cli.js");

function polylineData(svg: string): { label: string; x: string[]; y: string[] }[] {
  const out: { label: string; x: string[]; y: string[] }[] = [];
  const re = /<polyline[^>]*data-label="([^"]*)"[^>]*data-x="([^"]*)" data-y="([^"]*)"/g;
  for (const m of svg.matchAll(re)) {
    out.push({ label: m[1], x: m[2].split(" "), y: m[3].split(" ") });
  }
  return out;
}

describe("figure recipes", () => {
  for (const id of Object.keys(RECIPES)) {
    it(`${id} renders deterministically from the fixture CSVs`, () => {
      const first = renderRecipe(RECIPES[id], FIXTURES);
      const second = renderRecipe(RECIPES[id], FIXTURES);
      expect(first.length).toBeGreaterThan(500);
      expect(first.startsWith("<svg ")).toBe(true);
      expect(second).toBe(first);
    });
  }

  it("embeds CSV values verbatim (10-point spot check per series)", () => {
    const svg = renderRecipe(RECIPES.fig4, FIXTURES);
    const lines = polylineData(svg);
    expect(lines.length).toBe(8); // 4 gates x 2 energies
    const eps5 = readCsv(join(FIXTURES, "dephasing_identity5_eps5.csv"));
    const rawT = eps5.raw.get("t")!;
    const rawF = eps5.raw.get("F_gate")!;
    const series = lines[0]; // identity5 panel, eps = 5 series
    expect(series.x.length).toBe(rawT.length);
    const step = Math.max(1, Math.floor(rawT.length / 10));
    for (let k = 0; k < rawT.length; k += step) {
      expect(series.x[k]).toBe(rawT[k]);
      expect(series.y[k]).toBe(rawF[k]);
    }
  });

  it("grouped thermal slices carry one polyline per temperature", () => {
    const svg = renderRecipe(RECIPES.fig9, FIXTURES);
    const lines = polylineData(svg);
    // two panels x two temperatures in the fixture scans
    expect(lines.length).toBe(4);
    const table = readCsv(join(FIXTURES, "thermal_identity5_theta1.5708.csv"));
    const gRaw = table.raw.get("g")!;
    const fRaw = table.raw.get("F")!;
    const tVals = table.values.get("T")!;
    const first = lines[0];
    const expectX: string[] = [];
    const expectY: string[] = [];
    tVals.forEach((tv, i) => {
      if (tv === table.values.get("T")![0]) {
        expectX.push(gRaw[i]);
        expectY.push(fRaw[i]);
      }
    });
    expect(first.x).toEqual(expectX);
    expect(first.y).toEqual(expectY);
  });

  it("reports the offending column on schema mismatch", () => {
    const dir = mkdtempSync(join(tmpdir(), "figtest-"));
    writeFileSync(join(dir, "dephasing_cluster_eps3.csv"),
                  "# params: x\nt,wrong\n0.0,1.0\n");
    writeFileSync(join(dir, "dephasing_cluster_eps0.9.csv"),
                  "# params: x\nt,F\n0.0,1.0\n");
    writeFileSync(join(dir, "dephasing_cluster_eps0.csv"),
                  "# params: x\nt,F\n0.0,1.0\n");
    expect(() => renderRecipe(RECIPES.fig3, dir)).toThrowError(/column 'F'/);
  });

  it("fails on an empty CSV", () => {
    const dir = mkdtempSync(join(tmpdir(), "figtest-"));
    writeFileSync(join(dir, "dephasing_cluster_eps3.csv"), "# params: x\nt,F\n");
    expect(() => renderRecipe(RECIPES.fig3, dir)).toThrowError(/no data rows/);
  });

  it("fails on a missing CSV", () => {
    const dir = mkdtempSync(join(tmpdir(), "figtest-"));
    expect(() => renderRecipe(RECIPES.fig3, dir)).toThrowError(/not found/);
  });
});

describe("render-figure CLI", () => {
  function run(args: string[]): { status: number; stdout: string; stderr: string } {
    try {
      const stdout = execFileSync("node", [CLI, ...args], { encoding: "utf8" });
      return { status: 0, stdout, stderr: "" };
    } catch (err: any) {
      return { status: err.status, stdout: err.stdout ?? "", stderr: err.stderr ?? "" };
    }
  }

  it("writes byte-identical SVG on re-run", () => {
    const dir = mkdtempSync(join(tmpdir(), "figout-"));
    const out1 = join(dir, "a.svg");
    const out2 = join(dir, "b.svg");
    expect(run(["--recipe", "fig3", "--in", FIXTURES, "--out", out1]).status).toBe(0);
    expect(run(["--recipe", "fig3", "--in", FIXTURES, "--out", out2]).status).toBe(0);
    expect(readFileSync(out1)).toEqual(readFileSync(out2));
  });

  it("rejects unknown recipes with a usage error", () => {
    const res = run(["--recipe", "fig99", "--in", FIXTURES, "--out", "/tmp/x.svg"]);
    expect(res.status).toBe(2);
    expect(res.stderr).toMatch(/unknown recipe/);
  });

  it("exits 1 and writes nothing when input is malformed", () => {
    const dir = mkdtempSync(join(tmpdir(), "figout-"));
    const out = join(dir, "fig.svg");
    const res = run(["--recipe", "fig11", "--in", dir, "--out", out]);
    expect(res.status).toBe(1);
    expect(existsSync(out)).toBe(false);
  });
});
