/**
 * DOM wiring for the what-if explorer.
 *
 * The server computes everything; this file only sends edits, keeps the
 * latest response, and redraws. Widgets: budget slider + number box, optional
 * split pin, the split curve, a ratio gauge, the facility table with
 * pin/exclude toggles, and a people summary line.
 */

import { ApiError, ServiceClient } from "./api.js";
import type { ScenarioResponse, SummaryResponse } from "./api.js";
import { renderCurveSvg, renderGaugeSvg } from "./chart.js";
import {
  LatestWins,
  ScenarioEdits,
  ScenarioView,
  SortKey,
  buildRequest,
  buildView,
  cycleMark,
  emptyEdits,
  formatMoney,
  formatRatio,
  sortRows,
} from "./state.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8080";

const client = new ServiceClient(baseUrl);
const sequencer = new LatestWins();

let summary: SummaryResponse | null = null;
let edits: ScenarioEdits = emptyEdits();
let view: ScenarioView | null = null;
let sortKey: SortKey = "efficiency";
let sortDescending = false;

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function showError(message: string | null): void {
  const box = $("error-box");
  box.textContent = message ?? "";
  box.style.display = message ? "block" : "none";
}

async function submitScenario(): Promise<void> {
  if (!summary) return;
  const seq = sequencer.next();
  $("status").textContent = "solving...";
  try {
    const response: ScenarioResponse = await client.postScenario(buildRequest(edits));
    if (!sequencer.accept(seq)) return; // a newer request already landed
    view = buildView(summary, response, edits);
    showError(null);
    render();
  } catch (err) {
    if (!sequencer.accept(seq)) return;
    showError(err instanceof ApiError ? err.message : `cannot reach service: ${String(err)}`);
  } finally {
    $("status").textContent = "";
  }
}

function render(): void {
  if (!summary || !view) return;
  $("headline").textContent =
    `${summary.nPeople.toLocaleString("en-US")} people, ` +
    `${summary.nFacilities.toLocaleString("en-US")} facilities, ` +
    `baseline risk ${view.baselineRisk.toPrecision(4)}`;

  const slider = $<HTMLInputElement>("budget-slider");
  const box = $<HTMLInputElement>("budget-box");
  if (document.activeElement !== slider && document.activeElement !== box) {
    slider.value = String(view.budget);
    box.value = view.budget.toPrecision(6);
  }
  $("budget-note").textContent =
    edits.budget === null ? "(instance budget)" : `(instance budget ${formatMoney(view.instanceBudget)})`;

  $("gauge").innerHTML = renderGaugeSvg(view.ratio);
  $("ratio-line").textContent =
    `risk ${view.totalRisk.toPrecision(4)} of ${view.baselineRisk.toPrecision(4)} ` +
    `(ratio ${formatRatio(view.ratio)})`;

  $("curve").innerHTML = renderCurveSvg(view.curve, view.bestSplit, view.evaluatedSplit);
  $("curve-caption").textContent =
    edits.splitPercent === null
      ? `best split: ${view.bestSplit}% of budget to isolation`
      : `showing pinned split ${view.evaluatedSplit}% (best would be ${view.bestSplit}%)`;

  $("people-summary").textContent =
    `${view.isolatedCount.toLocaleString("en-US")} people isolated for ` +
    `${formatMoney(view.spentIsolation)}; ${view.closedCount} facilities closed for ` +
    `${formatMoney(view.spentClosure)}; total spent ${formatMoney(view.spent)} of ${formatMoney(view.budget)}`;

  renderTable();
}

function renderTable(): void {
  if (!view) return;
  const body = $<HTMLTableSectionElement>("facility-rows");
  body.innerHTML = "";
  for (const row of sortRows(view.facilities, sortKey, sortDescending).slice(0, 500)) {
    const tr = document.createElement("tr");
    const mark = row.forced ? "pinned closed" : row.excluded ? "kept open" : "";
    const efficiency = row.risk > 0 ? (row.cost / row.risk).toPrecision(3) : "-";
    tr.innerHTML =
      `<td>${row.name}</td><td>${row.size}</td><td>${formatMoney(row.cost)}</td>` +
      `<td>${row.risk.toPrecision(3)}</td><td>${efficiency}</td>` +
      `<td>${row.closed ? "closed" : "open"}</td><td class="mark">${mark}</td>`;
    const toggle = document.createElement("td");
    const button = document.createElement("button");
    button.textContent = row.forced ? "pin: close" : row.excluded ? "pin: open" : "no pin";
    button.addEventListener("click", () => {
      edits.facilityMarks[row.id] = cycleMark(
        edits.facilityMarks[row.id] ?? "none",
      );
      void submitScenario();
    });
    toggle.appendChild(button);
    tr.appendChild(toggle);
    if (row.closed) tr.classList.add("closed-row");
    body.appendChild(tr);
  }
}

function wireControls(): void {
  const slider = $<HTMLInputElement>("budget-slider");
  const box = $<HTMLInputElement>("budget-box");
  const apply = (raw: string): void => {
    const value = Number(raw);
    if (!Number.isFinite(value) || value < 0) return;
    edits.budget = value;
    void submitScenario();
  };
  slider.addEventListener("change", () => apply(slider.value));
  box.addEventListener("change", () => apply(box.value));
  $("budget-reset").addEventListener("click", () => {
    edits.budget = null;
    void submitScenario();
  });

  const splitPin = $<HTMLInputElement>("split-pin");
  const splitSlider = $<HTMLInputElement>("split-slider");
  const syncSplit = (): void => {
    edits.splitPercent = splitPin.checked ? Number(splitSlider.value) : null;
    void submitScenario();
  };
  splitPin.addEventListener("change", syncSplit);
  splitSlider.addEventListener("change", () => {
    if (splitPin.checked) syncSplit();
  });

  $("clear-pins").addEventListener("click", () => {
    edits.facilityMarks = {};
    void submitScenario();
  });

  for (const th of document.querySelectorAll<HTMLTableCellElement>("th[data-sort]")) {
    th.addEventListener("click", () => {
      const key = th.dataset.sort as SortKey;
      sortDescending = key === sortKey ? !sortDescending : false;
      sortKey = key;
      renderTable();
    });
  }
}

async function start(): Promise<void> {
  try {
    summary = await client.getSummary();
  } catch (err) {
    showError(
      err instanceof ApiError
        ? err.message
        : `cannot reach the service at ${baseUrl}; start it with: riskcut serve --in instance.json`,
    );
    return;
  }
  const slider = $<HTMLInputElement>("budget-slider");
  slider.max = String(summary.budget * 2 || 1);
  slider.step = String((summary.budget || 1) / 200);
  wireControls();
  await submitScenario();
}

void start();
