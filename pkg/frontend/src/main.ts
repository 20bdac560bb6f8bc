/** DOM wiring: one active session per tab. */

import { ApiClient, ApiError } from "./api.js";
import type { AnswerValue, EtDocument } from "./api.js";
import {
  UiState,
  countNodes,
  initialState,
  withBusy,
  withError,
  withSessionCreated,
  withSnapshot,
  withStep,
} from "./state.js";
import { counterText, questionText, renderTree, reportText } from "./render.js";

const STRATEGIES = [
  "dqs", "dqh", "dqo", "dqo-complete", "dqo-general",
  "dqo-general-complete", "td", "hf", "ss",
];

const api = new ApiClient("");
let state: UiState = initialState();

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function render(): void {
  el("question").textContent = questionText(state);
  el("counter").textContent = counterText(state);
  el("tree").innerHTML = renderTree(state.initialSnapshot, state.snapshot);

  const report = el("report");
  if (state.finished) {
    report.textContent = reportText(state.report);
    report.classList.remove("hidden");
  } else {
    report.textContent = "";
    report.classList.add("hidden");
  }

  const banner = el("error");
  if (state.error) {
    banner.textContent = state.error;
    banner.classList.remove("hidden");
  } else {
    banner.classList.add("hidden");
  }

  const answering = state.sessionId !== null && !state.finished && !state.busy;
  (el("answer-correct") as HTMLButtonElement).disabled = !answering;
  (el("answer-wrong") as HTMLButtonElement).disabled = !answering;
  (el("start") as HTMLButtonElement).disabled = state.busy;

  const remaining = countNodes(state.snapshot);
  el("remaining").textContent =
    state.snapshot === null ? "" : `${remaining} node${remaining === 1 ? "" : "s"} remaining`;
}

async function refreshSnapshot(): Promise<void> {
  if (!state.sessionId) {
    return;
  }
  const snapshot = await api.getTree(state.sessionId);
  state = withSnapshot(state, snapshot);
}

async function guarded(action: () => Promise<void>): Promise<void> {
  state = withBusy(withError(state, null), true);
  render();
  try {
    await action();
  } catch (err) {
    const message = err instanceof ApiError ? err.message : String(err);
    state = withError(state, message);
  }
  state = withBusy(state, false);
  render();
}

async function loadDocument(): Promise<EtDocument> {
  const fileInput = el<HTMLInputElement>("file");
  const file = fileInput.files && fileInput.files[0];
  if (file) {
    return JSON.parse(await file.text()) as EtDocument;
  }
  const fixture = el<HTMLSelectElement>("fixture").value;
  return api.getFixture(fixture);
}

async function startSession(): Promise<void> {
  await guarded(async () => {
    if (state.sessionId) {
      await api.deleteSession(state.sessionId).catch(() => undefined);
    }
    const doc = await loadDocument();
    const strategy = el<HTMLSelectElement>("strategy").value;
    const created = await api.createSession(doc, strategy);
    state = withSessionCreated(state, created);
    await refreshSnapshot();
  });
}

async function answer(value: AnswerValue): Promise<void> {
  await guarded(async () => {
    if (!state.sessionId) {
      return;
    }
    const step = await api.postAnswer(state.sessionId, value);
    state = withStep(state, step);
    await refreshSnapshot();
  });
}

async function init(): Promise<void> {
  const strategySelect = el<HTMLSelectElement>("strategy");
  for (const token of STRATEGIES) {
    const option = document.createElement("option");
    option.value = token;
    option.textContent = token;
    option.selected = token === "dqo-general";
    strategySelect.appendChild(option);
  }

  const fixtureSelect = el<HTMLSelectElement>("fixture");
  try {
    for (const name of await api.listFixtures()) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = name;
      fixtureSelect.appendChild(option);
    }
  } catch (err) {
    state = withError(state, err instanceof ApiError ? err.message : String(err));
  }

  el("start").addEventListener("click", () => void startSession());
  el("answer-correct").addEventListener("click", () => void answer("correct"));
  el("answer-wrong").addEventListener("click", () => void answer("wrong"));
  render();
}

void init();
