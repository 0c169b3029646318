// Opt-in integration check against a live service instance:
//   MAASREC_E2E=http://127.0.0.1:8000 vitest run tests/e2e.spec.ts
// Seeds the service over its real API and drives the app end to end.

import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { App, type AppElements } from '../src/app.js';

const BASE = process.env.MAASREC_E2E;

const CATALOG = {
  currency: 'HUF',
  modes: ['public_transport', 'taxi', 'bike_sharing', 'car_sharing'],
  plans: [
    {
      id: '1',
      price: 20950,
      period_days: 30,
      quotas: [
        { mode: 'public_transport', amount: 1, unit: 'monthly_pass_count' },
        { mode: 'taxi', amount: 3000, unit: 'currency_amount' },
        { mode: 'bike_sharing', amount: 1, unit: 'monthly_pass_count' },
        { mode: 'car_sharing', amount: 3, unit: 'driving_hours' },
      ],
    },
    {
      id: '2',
      price: 17450,
      period_days: 30,
      quotas: [
        { mode: 'public_transport', amount: 1, unit: 'monthly_pass_count' },
        { mode: 'bike_sharing', amount: 1, unit: 'monthly_pass_count' },
        { mode: 'car_sharing', amount: 3, unit: 'driving_hours' },
      ],
    },
  ],
};

const RULES = [
  "If user.driving_license='No' then product.car_sharing=0",
  "If user.fare_reductions='Yes' then product.id in {50,51,52}",
  "If user.carsharing_usage='every_day' then product.car_sharing!=0",
].join('\n');

const PROFILE = {
  driving_license: true,
  can_cycle: true,
  fare_reductions: false,
  usage: {
    public_transport: 'once_per_day',
    taxi: 'never',
    bike_sharing: 'times_per_week:2',
    car_sharing: 'few_times_per_year',
  },
  willingness: { public_transport: 1, taxi: 4, bike_sharing: 2, car_sharing: 3 },
  max_walk_m: 1500,
  max_bike_m: 5000,
};

function buildElements(): AppElements {
  document.body.innerHTML = `
    <div id="q"></div><p id="pe"></p><div id="pr"></div>
    <form id="rf">
      <input name="origin" /><input name="destination" />
      <textarea name="routes_json"></textarea>
      <input type="checkbox" name="verbose" />
    </form>
    <p id="re"></p><div id="rr"></div>
  `;
  return {
    questionnaire: document.getElementById('q')!,
    planResults: document.getElementById('pr')!,
    planError: document.getElementById('pe')!,
    routeForm: document.getElementById('rf') as HTMLFormElement,
    routeResults: document.getElementById('rr')!,
    routeError: document.getElementById('re')!,
  };
}

describe.skipIf(!BASE)('live service integration', () => {
  it('ranks plans and routes through the real API', async () => {
    const base = BASE!;
    await fetch(`${base}/v1/catalog`, { method: 'PUT', body: JSON.stringify(CATALOG) });
    await fetch(`${base}/v1/rules`, { method: 'PUT', body: RULES });
    await fetch(`${base}/v1/users/e2e-user/profile`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(PROFILE),
    });

    const elements = buildElements();
    const app = new App(new ApiClient(base), elements, 'e2e-user');
    app.mount();

    const client = new ApiClient(base);
    const plans = await client.recommendPlans(PROFILE);
    expect(plans.entries.length).toBe(2);
    expect(plans.fallback_used).toBe(false);

    elements.routeForm.querySelector<HTMLTextAreaElement>('[name=routes_json]')!.value = JSON.stringify({
      routes: [
        { id: 'walk', legs: [{ mode: 'walk', distance_m: 900, duration_s: 800, cost: 0 }] },
        {
          id: 'metro',
          legs: [
            { mode: 'walk', distance_m: 250, duration_s: 200, cost: 0 },
            { mode: 'public_transport', distance_m: 6000, duration_s: 800, cost: 350 },
          ],
        },
      ],
    });
    await app.submitRouteQuery();
    const cards = [...elements.routeResults.querySelectorAll('.route-card')];
    expect(cards.length).toBe(2);
    expect(elements.routeResults.querySelectorAll('.route-card.default')).toHaveLength(1);

    // Taking a trip posts a JS-style (Z-suffixed) timestamp and re-queries;
    // the walked route must stop being unfamiliar once it is in the log.
    const walkCard = elements.routeResults.querySelector('.route-card[data-route-id="walk"]')!;
    expect([...walkCard.querySelectorAll('.badge')].map((b) => b.getAttribute('data-badge'))).toContain(
      'unfamiliar',
    );
    walkCard.querySelector<HTMLButtonElement>('button.take-trip')!.click();
    await new Promise((resolve) => setTimeout(resolve, 200));
    expect(elements.routeError.textContent).toBe('');
    const refreshed = elements.routeResults.querySelector('.route-card[data-route-id="walk"]')!;
    expect(
      [...refreshed.querySelectorAll('.badge')].map((b) => b.getAttribute('data-badge')),
    ).not.toContain('unfamiliar');
  });
});
