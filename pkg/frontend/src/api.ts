// HTTP client for the forecasting service. fetch is injectable for tests.

import type {
  EvaluateResponse,
  FieldDiagnostic,
  PresetCatalog,
  RunConfig,
  SweepReport,
} from "./types.js";

export class ValidationError extends Error {
  diagnostics: FieldDiagnostic[];

  constructor(diagnostics: FieldDiagnostic[]) {
    super(diagnostics.map((d) => `${d.field}: ${d.message}`).join("; "));
    this.diagnostics = diagnostics;
  }
}

export class ServiceError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

type Fetch = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: Fetch = fetch,
  ) {}

  async presets(): Promise<PresetCatalog> {
    const resp = await this.fetchImpl(`${this.baseUrl}/presets`);
    if (!resp.ok) throw new ServiceError(resp.status, await resp.text());
    return (await resp.json()) as PresetCatalog;
  }

  async evaluate(config: RunConfig): Promise<EvaluateResponse> {
    return (await this.post("/evaluate", config)) as EvaluateResponse;
  }

  async sweep(config: RunConfig): Promise<SweepReport> {
    return (await this.post("/sweep", config)) as SweepReport;
  }

  private async post(path: string, body: unknown): Promise<unknown> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (resp.status === 400) {
      const payload = (await resp.json()) as { detail?: FieldDiagnostic[] };
      throw new ValidationError(payload.detail ?? []);
    }
    if (!resp.ok) throw new ServiceError(resp.status, await resp.text());
    return resp.json();
  }
}
