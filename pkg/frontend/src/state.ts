/**
 * View-model layer: pure functions from (summary, scenario response, edits)
 * to the data each widget renders. No risk math happens here, only shaping
 * and formatting of server numbers.
 */

import type { ScenarioRequest, ScenarioResponse, SummaryResponse } from "./api.js";

export type FacilityMark = "none" | "pin" | "exclude";

export interface ScenarioEdits {
  /** null = use the instance budget */
  budget: number | null;
  /** null = let the sweep pick the best split */
  splitPercent: number | null;
  facilityMarks: Record<number, FacilityMark>;
}

export const emptyEdits = (): ScenarioEdits => ({
  budget: null,
  splitPercent: null,
  facilityMarks: {},
});

export function buildRequest(edits: ScenarioEdits): ScenarioRequest {
  const request: ScenarioRequest = {};
  if (edits.budget !== null) request.budget = edits.budget;
  if (edits.splitPercent !== null) request.splitPercent = edits.splitPercent;
  const forced: number[] = [];
  const excluded: number[] = [];
  for (const [id, mark] of Object.entries(edits.facilityMarks)) {
    if (mark === "pin") forced.push(Number(id));
    else if (mark === "exclude") excluded.push(Number(id));
  }
  if (forced.length) request.forcedClosures = forced.sort((a, b) => a - b);
  if (excluded.length) request.excludedFacilities = excluded.sort((a, b) => a - b);
  return request;
}

export function cycleMark(mark: FacilityMark): FacilityMark {
  return mark === "none" ? "pin" : mark === "pin" ? "exclude" : "none";
}

export interface FacilityRow {
  id: number;
  name: string;
  size: number;
  cost: number;
  risk: number;
  closed: boolean;
  forced: boolean;
  excluded: boolean;
}

export interface CurvePoint {
  split: number;
  ratio: number;
}

export interface ScenarioView {
  budget: number;
  instanceBudget: number;
  baselineRisk: number;
  totalRisk: number;
  ratio: number;
  bestSplit: number;
  evaluatedSplit: number;
  curve: CurvePoint[];
  facilities: FacilityRow[];
  closedCount: number;
  isolatedCount: number;
  spentIsolation: number;
  spentClosure: number;
  spent: number;
}

export function buildView(
  summary: SummaryResponse,
  response: ScenarioResponse,
  edits: ScenarioEdits,
): ScenarioView {
  const closed = new Set(response.solution.closedFacilities);
  const facilities: FacilityRow[] = [];
  for (let id = 0; id < summary.nFacilities; id++) {
    facilities.push({
      id,
      name: summary.facilities.labels?.[id] ?? `facility ${id}`,
      size: summary.facilities.sizes[id] ?? 0,
      cost: summary.facilities.closureCosts[id] ?? 0,
      risk: response.riskReport.facilityRisk[id] ?? 0,
      closed: closed.has(id),
      forced: edits.facilityMarks[id] === "pin",
      excluded: edits.facilityMarks[id] === "exclude",
    });
  }
  return {
    budget: response.budget,
    instanceBudget: summary.budget,
    baselineRisk: response.riskReport.baselineRisk,
    totalRisk: response.riskReport.totalRisk,
    ratio: response.riskReport.ratio,
    bestSplit: response.bestSplit,
    evaluatedSplit: response.evaluatedSplit,
    curve: response.splitCurve.map((p) => ({ split: p.split, ratio: p.ratio })),
    facilities,
    closedCount: response.solution.closedFacilities.length,
    isolatedCount: response.solution.isolatedPeople.length,
    spentIsolation: response.spentIsolation,
    spentClosure: response.spentClosure,
    spent: response.solution.spent,
  };
}

export type SortKey = "id" | "size" | "cost" | "risk" | "efficiency";

/** Efficiency = cost per unit of current facility risk (Infinity for none). */
export function sortRows(rows: FacilityRow[], key: SortKey, descending = false): FacilityRow[] {
  const value = (row: FacilityRow): number => {
    switch (key) {
      case "id":
        return row.id;
      case "size":
        return row.size;
      case "cost":
        return row.cost;
      case "risk":
        return row.risk;
      case "efficiency":
        return row.risk > 0 ? row.cost / row.risk : Infinity;
    }
  };
  const sorted = [...rows].sort((a, b) => value(a) - value(b) || a.id - b.id);
  return descending ? sorted.reverse() : sorted;
}

/**
 * Monotone sequence guard: responses landing out of order are discarded so
 * the view is always a function of the latest accepted response.
 */
export class LatestWins {
  private issued = 0;
  private accepted = 0;

  next(): number {
    return ++this.issued;
  }

  accept(sequence: number): boolean {
    if (sequence <= this.accepted) return false;
    this.accepted = sequence;
    return true;
  }
}

export const formatRatio = (ratio: number): string => ratio.toFixed(3);

export const formatMoney = (amount: number): string =>
  amount >= 1000 ? amount.toLocaleString("en-US", { maximumFractionDigits: 0 }) : amount.toPrecision(3);
