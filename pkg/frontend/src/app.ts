// Page controller: wires the questionnaire to the plan recommender and the
// route what-if panel to the route recommender. At most one recommendation
// request of each kind is honored at a time: a stale response (an earlier
// request resolving after a newer one was issued) is dropped.

import {
  ApiClient,
  ApiError,
  type QuotaDocument,
  type RouteDocument,
} from './api.js';
import { toProfileDocument, type QuestionnaireState } from './questionnaire.js';
import { buildQuestionnaire } from './views/questionnaire.js';
import { renderPlanResults } from './views/plans.js';
import { renderRouteRecommendation } from './views/routes.js';

export interface AppElements {
  questionnaire: HTMLElement;
  planResults: HTMLElement;
  planError: HTMLElement;
  routeForm: HTMLFormElement;
  routeResults: HTMLElement;
  routeError: HTMLElement;
}

// A selected trip consumes quota only where a single ride plausibly does:
// car-sharing time and taxi fare. Pass-based modes consume nothing per ride.
export function quotaConsumedFor(route: RouteDocument): QuotaDocument[] {
  const consumed: QuotaDocument[] = [];
  let carHours = 0;
  let taxiCost = 0;
  for (const leg of route.legs) {
    if (leg.mode === 'car_sharing') carHours += leg.duration_s / 3600;
    if (leg.mode === 'taxi') taxiCost += leg.cost;
  }
  if (carHours > 0) consumed.push({ mode: 'car_sharing', amount: carHours, unit: 'driving_hours' });
  if (taxiCost > 0) consumed.push({ mode: 'taxi', amount: taxiCost, unit: 'currency_amount' });
  return consumed;
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const body = error.body as { error?: string; violations?: Array<{ path: string; reason: string }> } | null;
    if (body?.violations?.length) {
      return `${body.error}: ${body.violations.map((v) => `${v.path} (${v.reason})`).join('; ')}`;
    }
    if (body?.error) return body.error;
    return `service returned ${error.status}`;
  }
  return error instanceof Error ? error.message : String(error);
}

export class App {
  private planRequestSeq = 0;
  private routeRequestSeq = 0;

  constructor(
    private client: ApiClient,
    private elements: AppElements,
    private userId: string = 'traveler',
  ) {}

  mount(): void {
    const view = buildQuestionnaire((state) => void this.submitQuestionnaire(state));
    this.elements.questionnaire.append(view.element);
    this.elements.routeForm.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.submitRouteQuery();
    });
  }

  async submitQuestionnaire(state: QuestionnaireState): Promise<void> {
    const profile = toProfileDocument(state);
    const seq = ++this.planRequestSeq;
    this.elements.planError.textContent = '';
    try {
      await this.client.putProfile(this.userId, profile);
      const [payload, catalog] = await Promise.all([
        this.client.recommendPlans(profile, profile.budget),
        this.client.getCatalog().catch(() => undefined),
      ]);
      if (seq !== this.planRequestSeq) return; // a newer submission won
      renderPlanResults(this.elements.planResults, payload, catalog);
    } catch (error) {
      if (seq !== this.planRequestSeq) return;
      this.elements.planError.textContent = describeError(error);
    }
  }

  private readRouteForm(): { routes?: RouteDocument[]; origin?: string; destination?: string; verbose: boolean } {
    const form = this.elements.routeForm;
    const textarea = form.querySelector<HTMLTextAreaElement>('[name=routes_json]');
    const origin = form.querySelector<HTMLInputElement>('[name=origin]')?.value.trim() ?? '';
    const destination = form.querySelector<HTMLInputElement>('[name=destination]')?.value.trim() ?? '';
    const verbose = form.querySelector<HTMLInputElement>('[name=verbose]')?.checked ?? false;
    const rawRoutes = textarea?.value.trim() ?? '';
    if (rawRoutes) {
      const parsed = JSON.parse(rawRoutes) as { routes?: RouteDocument[] } | RouteDocument[];
      const routes = Array.isArray(parsed) ? parsed : (parsed.routes ?? []);
      return { routes, verbose };
    }
    return { origin, destination, verbose };
  }

  async submitRouteQuery(): Promise<void> {
    const seq = ++this.routeRequestSeq;
    this.elements.routeError.textContent = '';
    let query;
    try {
      query = this.readRouteForm();
    } catch (error) {
      this.elements.routeError.textContent = `routes JSON: ${describeError(error)}`;
      return;
    }
    const routesById = new Map((query.routes ?? []).map((route) => [route.id, route]));
    try {
      const payload = await this.client.recommendRoutes({
        user_id: this.userId,
        ...(query.routes ? { routes: query.routes } : { origin: query.origin, destination: query.destination }),
        verbose: query.verbose,
      });
      if (seq !== this.routeRequestSeq) return;
      renderRouteRecommendation(this.elements.routeResults, payload, {
        onSelect: (routeId) => void this.takeTrip(routesById.get(routeId)),
      });
    } catch (error) {
      if (seq !== this.routeRequestSeq) return;
      this.elements.routeError.textContent = describeError(error);
    }
  }

  async takeTrip(route: RouteDocument | undefined): Promise<void> {
    if (!route) return; // adapter-planned trips carry no leg data to replay
    try {
      await this.client.postTrip({
        user_id: this.userId,
        timestamp: new Date().toISOString(),
        route,
        quota_consumed: quotaConsumedFor(route),
      });
      await this.submitRouteQuery(); // refresh badges against the new history
    } catch (error) {
      this.elements.routeError.textContent = describeError(error);
    }
  }
}

export function startApp(baseUrl: string, elements: AppElements): App {
  const app = new App(new ApiClient(baseUrl), elements);
  app.mount();
  return app;
}
