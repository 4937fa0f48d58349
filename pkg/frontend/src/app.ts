/** DOM wiring for the search workbench.
 *
 * One search in flight at a time: a new submission aborts the pending
 * request. Results render in service order; every number on screen comes
 * from a response field.
 */

import { FilumClient, ServiceError } from "./api.js";
import { escapeHtml, renderHighlight } from "./highlight.js";
import {
  applyError,
  applyResponse,
  initialState,
  intervalAdjustable,
  selectMatch,
  UiSearchState,
} from "./state.js";
import { buildRows } from "./table.js";
import type { SearchRequest } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const baseUrlInput = byId<HTMLInputElement>("base-url");
const corpusSelect = byId<HTMLSelectElement>("corpus");
const worksSelect = byId<HTMLSelectElement>("works");
const queryInput = byId<HTMLInputElement>("query");
const modeSelect = byId<HTMLSelectElement>("mode");
const distanceInput = byId<HTMLInputElement>("max-distance");
const intervalInput = byId<HTMLInputElement>("max-interval");
const intervalWrap = byId<HTMLElement>("interval-wrap");
const searchForm = byId<HTMLFormElement>("search-form");
const widenButton = byId<HTMLButtonElement>("widen-k");
const narrowButton = byId<HTMLButtonElement>("narrow-k");
const statusLine = byId<HTMLElement>("status");
const errorBanner = byId<HTMLElement>("error-banner");
const resultsBody = byId<HTMLTableSectionElement>("results-body");
const resultsTable = byId<HTMLTableElement>("results");
const inspector = byId<HTMLElement>("inspector");
const historyList = byId<HTMLUListElement>("history");

let state: UiSearchState = initialState();
let controller: AbortController | null = null;

function client(): FilumClient {
  return new FilumClient(baseUrlInput.value.replace(/\/+$/, ""));
}

function requestFromControls(): SearchRequest {
  const workIds = Array.from(worksSelect.selectedOptions).map((o) => o.value);
  return {
    corpus_id: corpusSelect.value,
    work_ids: workIds.length > 0 ? workIds : null,
    query: queryInput.value,
    mode: modeSelect.value === "free" ? "free" : "fixed",
    max_distance: Number(distanceInput.value),
    max_interval: Number(intervalInput.value),
    context_lines: 1,
  };
}

function controlsFromRequest(request: SearchRequest): void {
  corpusSelect.value = request.corpus_id;
  for (const option of Array.from(worksSelect.options)) {
    option.selected = (request.work_ids ?? []).includes(option.value);
  }
  queryInput.value = request.query;
  modeSelect.value = request.mode;
  distanceInput.value = String(request.max_distance);
  intervalInput.value = String(request.max_interval);
  syncIntervalControl();
}

function syncIntervalControl(): void {
  const adjustable = intervalAdjustable(modeSelect.value);
  intervalInput.disabled = !adjustable;
  intervalWrap.title = adjustable
    ? "maximum number of intervening words"
    : "interval applies only to order-free searches; ignored in fixed mode";
}

function render(): void {
  errorBanner.textContent = state.error ?? "";
  errorBanner.hidden = state.error === null;

  const response = state.response;
  if (!response) {
    statusLine.textContent = "no search yet";
    resultsTable.hidden = true;
    inspector.hidden = true;
    renderHistory();
    return;
  }

  const truncated = response.truncated ? " (truncated)" : "";
  statusLine.textContent =
    `${response.match_count} matches in ${response.elapsed_ms.toFixed(1)} ms` +
    truncated;

  const rows = buildRows(response, state.newKeys);
  resultsBody.innerHTML = "";
  rows.forEach((row, index) => {
    const tr = document.createElement("tr");
    tr.innerHTML =
      `<td>${escapeHtml(row.locus)}</td>` +
      `<td class="alignment">${row.highlightHtml}</td>` +
      `<td class="num">${row.distance}</td>` +
      `<td class="num">${row.interval}</td>` +
      `<td>${row.isNew ? '<span class="badge-new">new at this budget</span>' : ""}</td>`;
    if (row.warning) {
      tr.title = row.warning;
    }
    if (state.selection === index) {
      tr.classList.add("selected");
    }
    tr.addEventListener("click", () => {
      state = selectMatch(state, index);
      render();
    });
    resultsBody.appendChild(tr);
  });
  resultsTable.hidden = rows.length === 0;
  if (rows.length === 0) {
    statusLine.textContent = `0 matches in ${response.elapsed_ms.toFixed(1)} ms`;
  }

  renderInspector();
  renderHistory();
}

function renderInspector(): void {
  const response = state.response;
  if (!response || state.selection === null) {
    inspector.hidden = true;
    return;
  }
  const match = response.matches[state.selection];
  if (!match) {
    inspector.hidden = true;
    return;
  }
  const rendered = renderHighlight(match);
  const contextHtml = match.context
    .map(
      (line) =>
        `<div class="context-line"><span class="locus">${escapeHtml(line.locus)}</span> ` +
        `${escapeHtml(line.text)}</div>`,
    )
    .join("");
  const assignmentHtml = (match.assignment ?? [])
    .map(
      (wa) =>
        `<li><code>${escapeHtml(wa.query_word)}</code> → ` +
        `<code>${escapeHtml(wa.token_normalized)}</code> (d=${wa.distance})</li>`,
    )
    .join("");
  inspector.innerHTML =
    `<h3>${escapeHtml(match.locus)}</h3>` +
    `<p class="surface">${escapeHtml(match.surface_text)}</p>` +
    `<p class="alignment">${rendered.html}</p>` +
    (rendered.warning ? `<p class="warning">${escapeHtml(rendered.warning)}</p>` : "") +
    `<p>distance ${match.total_distance}, interval ${match.interval}</p>` +
    (assignmentHtml ? `<ul class="assignment">${assignmentHtml}</ul>` : "") +
    `<div class="context">${contextHtml}</div>`;
  inspector.hidden = false;
}

function renderHistory(): void {
  historyList.innerHTML = "";
  state.history.forEach((entry) => {
    const li = document.createElement("li");
    const req = entry.request;
    const budget =
      req.mode === "free"
        ? `k=${req.max_distance} m=${req.max_interval}`
        : `k=${req.max_distance}`;
    const label = `${req.query} [${req.mode} ${budget}] → ${entry.matchCount}`;
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = label;
    button.addEventListener("click", () => {
      controlsFromRequest(req);
      void runSearch(req);
    });
    li.appendChild(button);
    historyList.appendChild(li);
  });
}

async function runSearch(request: SearchRequest): Promise<void> {
  controller?.abort();
  controller = new AbortController();
  const signal = controller.signal;
  statusLine.textContent = "searching…";
  try {
    const response = await client().search(request, signal);
    if (signal.aborted) return;
    state = applyResponse(state, request, response);
  } catch (err) {
    if (signal.aborted) return;
    const message =
      err instanceof ServiceError
        ? err.message
        : `service unreachable: ${(err as Error).message}`;
    state = applyError(state, message);
  }
  render();
}

async function loadCorpora(): Promise<void> {
  try {
    const listing = await client().corpora();
    corpusSelect.innerHTML = "";
    worksSelect.innerHTML = "";
    for (const corpus of listing) {
      const option = document.createElement("option");
      option.value = corpus.corpus_id;
      option.textContent = corpus.corpus_id;
      corpusSelect.appendChild(option);
    }
    state = { ...state, error: null };
    syncWorkOptions(listing);
    corpusSelect.addEventListener("change", () => syncWorkOptions(listing));
  } catch (err) {
    state = applyError(state, `could not list corpora: ${(err as Error).message}`);
  }
  render();

  function syncWorkOptions(listing: { corpus_id: string; works: { work_id: string; author: string; title: string }[] }[]): void {
    const corpus = listing.find((c) => c.corpus_id === corpusSelect.value);
    worksSelect.innerHTML = "";
    for (const work of corpus?.works ?? []) {
      const option = document.createElement("option");
      option.value = work.work_id;
      option.textContent = `${work.author}, ${work.title}`;
      worksSelect.appendChild(option);
    }
  }
}

searchForm.addEventListener("submit", (event) => {
  event.preventDefault();
  void runSearch(requestFromControls());
});

widenButton.addEventListener("click", () => {
  distanceInput.value = String(Number(distanceInput.value) + 1);
  void runSearch(requestFromControls());
});

narrowButton.addEventListener("click", () => {
  distanceInput.value = String(Math.max(0, Number(distanceInput.value) - 1));
  void runSearch(requestFromControls());
});

modeSelect.addEventListener("change", syncIntervalControl);

syncIntervalControl();
render();
void loadCorpora();
