// Thin typed client for the game server. All group theory stays server-side;
// network failures are retried once, HTTP errors surface as ApiError.

export interface DesignJson {
  name: string;
  n: number;
  lambda?: number;
  blocks: number[][];
  labels?: string[];
}

export interface ServerState {
  hole: number;
  start: number;
  closed: boolean;
  is_identity: boolean;
  permutation: number[];
  history: number[];
  displaced: number;
  in_hole_stabilizer: boolean | null;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch {
    response = await fetch(url, init); // one retry on network failure
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, detail);
  }
  return response.json() as Promise<T>;
}

function post(body?: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: body === undefined ? "{}" : JSON.stringify(body),
  };
}

export class ApiClient {
  constructor(private base: string = "") {}

  design(): Promise<DesignJson> {
    return request(`${this.base}/api/design`);
  }

  async createSession(hole?: number): Promise<string> {
    const body = hole === undefined ? undefined : { hole };
    const data = await request<{ id: string }>(`${this.base}/api/session`, post(body));
    return data.id;
  }

  state(id: string): Promise<ServerState> {
    return request(`${this.base}/api/session/${id}`);
  }

  move(id: string, to: number): Promise<ServerState> {
    return request(`${this.base}/api/session/${id}/move`, post({ to }));
  }

  undo(id: string): Promise<ServerState> {
    return request(`${this.base}/api/session/${id}/undo`, post());
  }

  scramble(id: string, steps: number): Promise<ServerState> {
    return request(`${this.base}/api/session/${id}/scramble`, post({ steps }));
  }

  reset(id: string): Promise<ServerState> {
    return request(`${this.base}/api/session/${id}/reset`, post());
  }
}
