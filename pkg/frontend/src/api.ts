import type { LexiconView, SessionView } from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public field?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `${response.status} ${response.statusText}`;
  let field: string | undefined;
  try {
    const body = await response.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      field = body.error.field;
    } else if (body && body.detail) {
      message = JSON.stringify(body.detail);
      code = "validation_error";
    }
  } catch {
    // non-JSON body; keep the status line
  }
  return new ApiError(response.status, code, message, field);
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await fetch(this.base + path, init);
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  getLexicon(): Promise<LexiconView> {
    return this.request("GET", "/lexicon");
  }

  async createSession(): Promise<string> {
    const body = await this.request<{ session_id: string }>("POST", "/sessions");
    return body.session_id;
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  appendIcons(sessionId: string, ids: string[]): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/icons`, { ids });
  }

  removeIcons(sessionId: string, positions: number[]): Promise<SessionView> {
    return this.request("DELETE", `/sessions/${sessionId}/icons`, { positions });
  }
}
