/* Typed client for the study server. Every value shown in the UI comes
 * from these endpoints; nothing is computed client-side. */

export interface ColorInfo {
  name: string;
  rgb: [number, number, number];
}

export interface ImageRow {
  imageId: string;
  likes: number;
  colorHarmony: number;
  lightness: number;
  complexity: number;
  chNorm: number;
  lNorm: number;
  cNorm: number;
  simplicityNorm: number;
  aestheticScore: number;
}

export interface StudyInfo {
  studyId: string;
  imageIds: string[];
  userIds: string[];
  pairs: [string, string][];
  trialsPerUser: number;
  seed: number;
}

export interface NextTrial {
  done: boolean;
  pair?: [string, string];
  leftImage?: string;
  rightImage?: string;
}

export interface TrialResult {
  hit: boolean;
  tie: boolean;
}

export interface RateSummary {
  hits: number;
  trials: number;
  expectedTrials: number;
  hitRate: number | null;
}

export interface StudyReport {
  studyId: string;
  perUser: Record<string, RateSummary>;
  overall: RateSummary;
  complete: boolean;
}

export class ApiError extends Error {
  status: number;

  constructor(status: number, detail: string) {
    super(`${status}: ${detail}`);
    this.status = status;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    /* non-JSON error body, fall through */
  }
  return resp.statusText || "request failed";
}

export class ApiClient {
  private base: string;
  private fetcher: FetchLike;

  constructor(base = "", fetcher?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetcher = fetcher ?? ((input, init) => fetch(input, init));
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetcher(this.base + path, init);
    if (!resp.ok) throw new ApiError(resp.status, await errorDetail(resp));
    return resp;
  }

  private async postJson(path: string, body: unknown): Promise<Response> {
    return this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createUser(name: string): Promise<string> {
    const resp = await this.postJson("/api/users", { name });
    return (await resp.json()).userId;
  }

  async getColors(): Promise<ColorInfo[]> {
    const resp = await this.request("/api/colors");
    return (await resp.json()).colors;
  }

  /** Ratings go up on the 0-10 scale; the server stores them as 0-1. */
  async submitRatings(userId: string, ratings: Record<string, number>): Promise<void> {
    await this.postJson(`/api/users/${userId}/ratings`, ratings);
  }

  async getRatings(userId: string): Promise<Record<string, number>> {
    const resp = await this.request(`/api/users/${userId}/ratings`);
    return (await resp.json()).ratings;
  }

  async listImages(): Promise<ImageRow[]> {
    const resp = await this.request("/api/images");
    return (await resp.json()).images;
  }

  imageUrl(imageId: string): string {
    return `${this.base}/api/images/${imageId}`;
  }

  async createStudy(
    imageIds: string[],
    userIds: string[],
    seed?: number,
  ): Promise<StudyInfo> {
    const body: Record<string, unknown> = { imageIds, userIds };
    if (seed !== undefined) body.seed = seed;
    const resp = await this.postJson("/api/studies", body);
    return resp.json();
  }

  async nextTrial(studyId: string, userId: string): Promise<NextTrial> {
    const resp = await this.request(
      `/api/studies/${studyId}/next?user=${encodeURIComponent(userId)}`,
    );
    return resp.json();
  }

  async postTrial(
    studyId: string,
    userId: string,
    pair: [string, string],
    choice: string,
  ): Promise<TrialResult> {
    const resp = await this.postJson(`/api/studies/${studyId}/trials`, {
      userId,
      pair,
      choice,
    });
    return resp.json();
  }

  /** Report plus the exact bytes it arrived in, so the dashboard can echo
   *  numbers verbatim instead of reformatting them through parse/print. */
  async reportRaw(studyId: string): Promise<{ text: string; report: StudyReport }> {
    const resp = await this.request(`/api/studies/${studyId}/report`);
    const text = await resp.text();
    return { text, report: JSON.parse(text) };
  }
}
