/** Typed client for the debugging session service. */

export interface Question {
  id: number;
  label: string;
}

export interface TranscriptEntry {
  id: number;
  label: string;
  answer: "correct" | "wrong";
}

export interface Report {
  buggy: number | null;
  buggy_label: string | null;
  questions: number;
  transcript: TranscriptEntry[];
}

export interface CreateResponse {
  session: string;
  strategy: string;
  question: Question;
  question_number: number;
}

export interface StepResponse {
  finished: boolean;
  question?: Question;
  question_number?: number;
  report?: Report;
}

export interface SnapshotNode {
  id: number;
  label: string;
  wi: number;
  w: number;
  up: number;
  down: number;
  marking: "wrong" | "undefined";
  answered: boolean;
  pending: boolean;
  children: SnapshotNode[];
}

export interface TreeSnapshot {
  finished: boolean;
  pending: number | null;
  questions_asked: number;
  node_count: number;
  root: SnapshotNode | null;
}

export interface EtNode {
  id: number;
  label: string;
  weight?: number;
  children: number[];
}

export interface EtDocument {
  name?: string;
  root: number;
  root_marked_wrong?: boolean;
  nodes: EtNode[];
}

export type AnswerValue = "correct" | "wrong";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, {
        method,
        headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
        body: body !== undefined ? JSON.stringify(body) : undefined,
      });
    } catch (err) {
      throw new ApiError(0, `network error: ${String(err)}`);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const detail = payload && typeof payload.error === "string"
        ? payload.error
        : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/healthz");
  }

  createSession(et: EtDocument, strategy: string): Promise<CreateResponse> {
    return this.request("POST", "/sessions", { et, strategy });
  }

  postAnswer(sessionId: string, answer: AnswerValue): Promise<StepResponse> {
    return this.request("POST", `/sessions/${sessionId}/answers`, { answer });
  }

  getTree(sessionId: string): Promise<TreeSnapshot> {
    return this.request("GET", `/sessions/${sessionId}/tree`);
  }

  deleteSession(sessionId: string): Promise<void> {
    return this.request("DELETE", `/sessions/${sessionId}`);
  }

  async listFixtures(): Promise<string[]> {
    const payload = await this.request<{ fixtures: string[] }>("GET", "/fixtures");
    return payload.fixtures;
  }

  getFixture(name: string): Promise<EtDocument> {
    return this.request("GET", `/fixtures/${name}.json`);
  }
}
