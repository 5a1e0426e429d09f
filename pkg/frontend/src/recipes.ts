/**
 * One recipe per report figure: which CSVs feed it, how panels are laid out,
 * and which series style each curve gets. Recipes never transform data; they
 * only select columns/rows and hand values to the SVG scaler.
 */

export interface SeriesRecipe {
  file: string;
  x: string;
  y: string;
  label: string;
  stroke: string;
  dash?: string;
  /** keep only rows where column == equals (slicing a grid scan) */
  filter?: { column: string; equals: number };
  /** expand into one series per distinct value of this column */
  groupBy?: string;
}

export interface PanelRecipe {
  title: string;
  xLabel: string;
  yLabel: string;
  series: SeriesRecipe[];
  yRange?: [number, number];
}

export interface FigureRecipe {
  id: string;
  description: string;
  panels: PanelRecipe[];
}

const GREEN = "#1a9641";
const BLUE = "#2b83ba";
const RED = "#d7191c";
const BLACK = "#000000";
const DASH = "6,3";
const DASHDOT = "8,3,2,3";
const DOT = "2,3";

const GATES: [string, string, string, string | undefined][] = [
  ["identity5", "5-qubit identity gate", RED, DASHDOT],
  ["hadamard8", "8-qubit Hadamard gate", GREEN, undefined],
  ["zrot5", "Z-rotation gate", BLUE, DASH],
  ["cz", "CZ gate", BLACK, DOT],
];

function clusterPanel(eps: string, stroke: string, dash?: string): PanelRecipe {
  return {
    title: `7-qubit cluster, eps = ${eps}`,
    xLabel: "t",
    yLabel: "F",
    series: [{
      file: `dephasing_cluster_eps${eps}.csv`,
      x: "t", y: "F", label: `eps = ${eps}`, stroke, dash,
    }],
  };
}

function gateTimePanel(gate: string, title: string): PanelRecipe {
  return {
    title,
    xLabel: "t",
    yLabel: "F_U",
    series: [
      {
        file: `dephasing_${gate}_eps5.csv`,
        x: "t", y: "F_gate", label: "eps = 5", stroke: GREEN,
      },
      {
        file: `dephasing_${gate}_eps0.csv`,
        x: "t", y: "F_gate", label: "eps = 0", stroke: RED, dash: DASHDOT,
      },
    ],
  };
}

function peakStatPanel(y: string, yLabel: string, title: string,
                       gates = GATES): PanelRecipe {
  return {
    title,
    xLabel: "T",
    yLabel,
    series: gates.map(([gate, label, stroke, dash]) => ({
      file: `peakstats_${gate}.csv`,
      x: "T", y, label, stroke, dash,
    })),
  };
}

function thermalSlicePanel(gate: string, theta: string, title: string): PanelRecipe {
  return {
    title,
    xLabel: "g",
    yLabel: "F_U",
    series: [{
      file: `thermal_${gate}_theta${theta}.csv`,
      x: "g", y: "F", label: "T = {g}", stroke: BLUE, groupBy: "T",
    }],
  };
}

function thetaComparePanel(gate: string, title: string, temps: number): PanelRecipe {
  // temps: the T value to slice at; recipes pin it explicitly
  return {
    title,
    xLabel: "g",
    yLabel: "F_U",
    series: [
      {
        file: `thermal_${gate}_theta1.5708.csv`,
        x: "g", y: "F", label: "theta = pi/2", stroke: GREEN,
        filter: { column: "T", equals: temps },
      },
      {
        file: `thermal_${gate}_theta0.785398.csv`,
        x: "g", y: "F", label: "theta = pi/4", stroke: BLUE, dash: DASH,
        filter: { column: "T", equals: temps },
      },
      {
        file: `thermal_${gate}_theta0.csv`,
        x: "g", y: "F", label: "theta = 0", stroke: RED, dash: DASHDOT,
        filter: { column: "T", equals: temps },
      },
    ],
  };
}

export const RECIPES: Record<string, FigureRecipe> = {
  fig3: {
    id: "fig3",
    description: "Cluster-state fidelity vs time under ohmic dephasing, three qubit energies.",
    panels: [
      clusterPanel("3", GREEN),
      clusterPanel("0.9", BLUE, DASH),
      clusterPanel("0", RED, DASHDOT),
      {
        title: "All energies",
        xLabel: "t",
        yLabel: "F",
        series: [
          { file: "dephasing_cluster_eps3.csv", x: "t", y: "F", label: "eps = 3", stroke: GREEN },
          { file: "dephasing_cluster_eps0.9.csv", x: "t", y: "F", label: "eps = 0.9", stroke: BLUE, dash: DASH },
          { file: "dephasing_cluster_eps0.csv", x: "t", y: "F", label: "eps = 0", stroke: RED, dash: DASHDOT },
        ],
      },
    ],
  },
  fig4: {
    id: "fig4",
    description: "Gate fidelity vs time under ohmic dephasing for the four stock gates.",
    panels: [
      gateTimePanel("identity5", "5-qubit identity gate"),
      gateTimePanel("hadamard8", "8-qubit Hadamard gate"),
      gateTimePanel("cz", "CZ gate"),
      gateTimePanel("zrot5", "Z-rotation gate, zeta = pi/8"),
    ],
  },
  fig5: {
    id: "fig5",
    description: "First-peak fidelity drop rate vs environment temperature.",
    panels: [
      peakStatPanel("drop_rate", "dF/dt", "Drop rate, four gates"),
      peakStatPanel("drop_rate", "dF/dt", "Drop rate, identity gate only",
                    GATES.filter(([g]) => g === "identity5")),
    ],
  },
  fig6: {
    id: "fig6",
    description: "Revival-peak arrival time and height vs environment temperature.",
    panels: [
      peakStatPanel("t_peak", "t*", "Arrival time of the highest revival peak"),
      peakStatPanel("F_peak", "F*", "Fidelity of the highest revival peak"),
    ],
  },
  fig8: {
    id: "fig8",
    description: "Thermal-state identity-gate fidelity vs coupling, per temperature, three mixing angles.",
    panels: [
      thermalSlicePanel("identity5", "1.5708", "theta = pi/2"),
      thermalSlicePanel("identity5", "0.785398", "theta = pi/4"),
      thermalSlicePanel("identity5", "0", "theta = 0"),
    ],
  },
  fig9: {
    id: "fig9",
    description: "Thermal-state fidelity vs coupling at theta = pi/2, one line per temperature.",
    panels: [
      thermalSlicePanel("identity5", "1.5708", "5-qubit identity gate"),
      thermalSlicePanel("hadamard8", "1.5708", "8-qubit Hadamard gate"),
    ],
  },
  fig10: {
    id: "fig10",
    description: "Thermal-state fidelity vs coupling for three mixing angles at T = 1.",
    panels: [
      thetaComparePanel("identity5", "5-qubit identity gate", 1.0),
      thetaComparePanel("hadamard8", "8-qubit Hadamard gate", 1.0),
    ],
  },
  fig11: {
    id: "fig11",
    description: "Early revival-peak cluster fidelity vs chain length (collective coupling).",
    panels: [1, 2, 3, 4].map((k) => ({
      title: `Peak ${k}`,
      xLabel: "n",
      yLabel: "F",
      series: [{
        file: "sizescan_cluster.csv",
        x: "n", y: `F_peak${k}`, label: `peak ${k}`, stroke: BLUE,
      }],
    })),
  },
};
