/**
 * Thin client for the annotation service.
 *
 * One annotate request is considered in flight per client; responses that
 * arrive after a newer request was issued are reported as stale so the
 * caller can discard them.
 */

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface AnnotateOutcome {
  stale: boolean;
  payload?: unknown;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class AnnotationClient {
  private requestToken = 0;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async domains(): Promise<string[]> {
    const response = await this.fetchFn(`${this.baseUrl}/domains`);
    if (!response.ok) {
      throw new ApiError(`domains request failed (${response.status})`, response.status);
    }
    const body = (await response.json()) as { domains: string[] };
    return body.domains;
  }

  async examples(domain: string): Promise<string[]> {
    const response = await this.fetchFn(
      `${this.baseUrl}/examples?domain=${encodeURIComponent(domain)}`,
    );
    if (!response.ok) {
      throw new ApiError(`examples request failed (${response.status})`, response.status);
    }
    const body = (await response.json()) as { examples: string[] };
    return body.examples;
  }

  async annotate(text: string, domain: string): Promise<AnnotateOutcome> {
    const token = ++this.requestToken;
    const response = await this.fetchFn(`${this.baseUrl}/annotate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, domain }),
    });
    if (token !== this.requestToken) {
      return { stale: true };
    }
    if (!response.ok) {
      let detail = `annotate request failed (${response.status})`;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = String(body.detail);
      } catch {
        // keep the generic message
      }
      throw new ApiError(detail, response.status);
    }
    const body = (await response.json()) as { result: unknown };
    if (token !== this.requestToken) {
      return { stale: true };
    }
    return { stale: false, payload: body.result };
  }
}
