// Thin client for the recommendation service /v1 API. The UI never computes
// scores or reorders results; everything rendered comes from these payloads.

export interface ProfileDocument {
  driving_license: boolean;
  can_cycle: boolean;
  fare_reductions: boolean;
  usage: Record<string, string>;
  willingness: Record<string, number>;
  max_walk_m: number;
  max_bike_m: number;
  budget?: number;
}

export interface PlanEntry {
  plan_id: string;
  score: number;
}

export interface RankedPlansPayload {
  entries: PlanEntry[];
  fallback_used: boolean;
  budget_applied: boolean;
}

export interface RouteEntryPayload {
  route_id: string;
  score: number;
  badges: string[];
  is_default: boolean;
}

export interface RouteRecommendationPayload {
  entries: RouteEntryPayload[];
  status: string;
  truncated_to: number | null;
}

export interface LegDocument {
  mode: string;
  distance_m: number;
  duration_s: number;
  cost: number;
  provider_id?: string;
}

export interface RouteDocument {
  id: string;
  legs: LegDocument[];
}

export interface QuotaDocument {
  mode: string;
  amount: number;
  unit: string;
}

export interface PlanDocument {
  id: string;
  price: number;
  currency: string;
  period_days: number;
  quotas: QuotaDocument[];
  tags: string[];
}

export interface CatalogDocument {
  currency: string;
  modes: string[];
  plans: PlanDocument[];
}

export interface TripDocument {
  user_id: string;
  timestamp: string;
  route: RouteDocument;
  quota_consumed: QuotaDocument[];
}

export interface RouteRequest {
  user_id: string;
  routes?: RouteDocument[];
  origin?: string;
  destination?: string;
  verbose?: boolean;
  now?: string;
}

export class ApiError extends Error {
  constructor(public status: number, public body: unknown) {
    super(`service returned ${status}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown, raw?: string): Promise<T> {
    const init: RequestInit = { method, headers: { 'content-type': 'application/json' } };
    if (raw !== undefined) {
      init.body = raw;
    } else if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, payload);
    }
    return payload as T;
  }

  recommendPlans(profile: ProfileDocument, budget?: number): Promise<RankedPlansPayload> {
    const body: { profile: ProfileDocument; budget?: number } = { profile };
    if (budget !== undefined) body.budget = budget;
    return this.request('POST', '/v1/recommend/plans', body);
  }

  recommendRoutes(request: RouteRequest): Promise<RouteRecommendationPayload> {
    return this.request('POST', '/v1/recommend/routes', request);
  }

  putProfile(userId: string, profile: ProfileDocument): Promise<unknown> {
    return this.request('PUT', `/v1/users/${encodeURIComponent(userId)}/profile`, profile);
  }

  postTrip(trip: TripDocument): Promise<unknown> {
    return this.request('POST', '/v1/usage/trips', trip);
  }

  getCatalog(): Promise<CatalogDocument> {
    return this.request('GET', '/v1/catalog');
  }
}
