/** Session view-model: a pure reduction of server responses.
 *
 * The UI never invents node state. The tree panel is drawn from the last
 * snapshot the server sent, plus the session's first snapshot so removed
 * nodes can linger as ghosts.
 */

import type {
  CreateResponse,
  Question,
  Report,
  SnapshotNode,
  StepResponse,
  TreeSnapshot,
} from "./api.js";

export interface UiState {
  sessionId: string | null;
  strategy: string;
  busy: boolean;
  error: string | null;
  questionNumber: number;
  pending: Question | null;
  finished: boolean;
  report: Report | null;
  initialSnapshot: TreeSnapshot | null;
  snapshot: TreeSnapshot | null;
}

export function initialState(strategy = "dqo-general"): UiState {
  return {
    sessionId: null,
    strategy,
    busy: false,
    error: null,
    questionNumber: 0,
    pending: null,
    finished: false,
    report: null,
    initialSnapshot: null,
    snapshot: null,
  };
}

export function withSessionCreated(state: UiState, resp: CreateResponse): UiState {
  return {
    ...initialState(resp.strategy),
    sessionId: resp.session,
    pending: resp.question,
    questionNumber: resp.question_number,
  };
}

export function withStep(state: UiState, resp: StepResponse): UiState {
  if (resp.finished) {
    return {
      ...state,
      pending: null,
      finished: true,
      report: resp.report ?? null,
    };
  }
  return {
    ...state,
    pending: resp.question ?? null,
    questionNumber: resp.question_number ?? state.questionNumber + 1,
    finished: false,
  };
}

export function withSnapshot(state: UiState, snapshot: TreeSnapshot): UiState {
  return {
    ...state,
    snapshot,
    initialSnapshot: state.initialSnapshot ?? snapshot,
  };
}

export function withBusy(state: UiState, busy: boolean): UiState {
  return { ...state, busy };
}

export function withError(state: UiState, error: string | null): UiState {
  return { ...state, error };
}

export function countNodes(snapshot: TreeSnapshot | null): number {
  if (!snapshot || !snapshot.root) {
    return 0;
  }
  const walk = (node: SnapshotNode): number =>
    1 + node.children.reduce((acc, c) => acc + walk(c), 0);
  return walk(snapshot.root);
}
