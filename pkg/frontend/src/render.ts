/**
 * Turn a figure recipe plus a directory of scan CSVs into SVG text.
 */

import { join } from "node:path";

import { CsvError, distinctValues, extractSeries, readCsv, type CsvTable } from "./csv.js";
import type { FigureRecipe, SeriesRecipe } from "./recipes.js";
import { renderFigure, type PanelContent } from "./svg.js";

const GROUP_PALETTE = ["#2b83ba", "#1a9641", "#d7191c", "#fdae61", "#7b3294",
                       "#636363", "#a6611a", "#018571"];

function loadTable(cache: Map<string, CsvTable>, dir: string, file: string): CsvTable {
  const path = join(dir, file);
  const hit = cache.get(path);
  if (hit) {
    return hit;
  }
  const table = readCsv(path);
  cache.set(path, table);
  return table;
}

function expandSeries(
  cache: Map<string, CsvTable>,
  dir: string,
  recipe: SeriesRecipe,
): PanelContent["series"] {
  const table = loadTable(cache, dir, recipe.file);
  if (recipe.groupBy) {
    const groups = distinctValues(table, recipe.groupBy);
    return groups.map((value, k) => ({
      data: extractSeries(table, recipe.x, recipe.y,
                          { column: recipe.groupBy!, equals: value }),
      style: {
        label: `${recipe.groupBy} = ${value}`,
        stroke: GROUP_PALETTE[k % GROUP_PALETTE.length],
        dash: recipe.dash,
      },
    }));
  }
  return [{
    data: extractSeries(table, recipe.x, recipe.y, recipe.filter),
    style: { label: recipe.label, stroke: recipe.stroke, dash: recipe.dash },
  }];
}

export function renderRecipe(recipe: FigureRecipe, inputDir: string): string {
  const cache = new Map<string, CsvTable>();
  const panels: PanelContent[] = recipe.panels.map((panel) => ({
    title: panel.title,
    xLabel: panel.xLabel,
    yLabel: panel.yLabel,
    yRange: panel.yRange,
    series: panel.series.flatMap((s) => expandSeries(cache, inputDir, s)),
  }));
  return renderFigure(recipe.id, panels);
}

export { CsvError };
