import { beforeEach, describe, expect, it } from 'vitest';

import type { CatalogDocument, RankedPlansPayload, RouteRecommendationPayload } from '../src/api.js';
import { renderPlanResults } from '../src/views/plans.js';
import { renderRouteRecommendation } from '../src/views/routes.js';

const CATALOG: CatalogDocument = {
  currency: 'HUF',
  modes: ['public_transport', 'taxi', 'bike_sharing', 'car_sharing'],
  plans: [
    {
      id: '1',
      price: 20950,
      currency: 'HUF',
      period_days: 30,
      quotas: [
        { mode: 'public_transport', amount: 1, unit: 'monthly_pass_count' },
        { mode: 'taxi', amount: 3000, unit: 'currency_amount' },
      ],
      tags: [],
    },
    { id: '2', price: 17450, currency: 'HUF', period_days: 30, quotas: [], tags: [] },
  ],
};

describe('plan results table', () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="c"></div>';
    container = document.getElementById('c')!;
  });

  it('renders rows in exactly the payload order', () => {
    // Deliberately not id-ordered: the view must not re-sort anything.
    const payload: RankedPlansPayload = {
      entries: [
        { plan_id: '2', score: 0.91 },
        { plan_id: '1', score: 0.37 },
      ],
      fallback_used: false,
      budget_applied: false,
    };
    renderPlanResults(container, payload, CATALOG);
    const rows = [...container.querySelectorAll('tr[data-plan-id]')];
    expect(rows.map((row) => row.getAttribute('data-plan-id'))).toEqual(['2', '1']);
    expect(rows[0].textContent).toContain('0.9100');
    expect(container.querySelector('.fallback-banner')).toBeNull();
  });

  it('shows the fallback banner when flagged', () => {
    const payload: RankedPlansPayload = {
      entries: [{ plan_id: '2', score: 0.5 }],
      fallback_used: true,
      budget_applied: true,
    };
    renderPlanResults(container, payload, CATALOG);
    expect(container.querySelector('.fallback-banner')?.textContent).toContain('within your budget');
  });

  it('renders quotas and price from the catalog join', () => {
    const payload: RankedPlansPayload = {
      entries: [{ plan_id: '1', score: 0.42 }],
      fallback_used: false,
      budget_applied: false,
    };
    renderPlanResults(container, payload, CATALOG);
    const row = container.querySelector('tr[data-plan-id="1"]')!;
    expect(row.textContent).toContain('public transport: 1 pass');
    expect(row.textContent).toContain('20950 HUF');
  });

  it('renders an empty state for an empty ranking', () => {
    renderPlanResults(container, { entries: [], fallback_used: true, budget_applied: true }, CATALOG);
    expect(container.querySelector('.empty-state')).not.toBeNull();
  });
});

describe('route recommendation cards', () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="c"></div>';
    container = document.getElementById('c')!;
  });

  const payload: RouteRecommendationPayload = {
    entries: [
      { route_id: 'bike-share', score: 9, badges: ['acceptable_walk', 'promoted_mode'], is_default: true },
      { route_id: 'walk-park', score: 11, badges: [], is_default: false },
      { route_id: 'taxi-door', score: 3, badges: ['unfamiliar'], is_default: false },
    ],
    status: 'ok',
    truncated_to: 5,
  };

  it('keeps card order, default highlight and badges exactly as sent', () => {
    // Scores are intentionally non-monotone: order must come from the payload.
    renderRouteRecommendation(container, payload);
    const cards = [...container.querySelectorAll('.route-card')];
    expect(cards.map((card) => card.getAttribute('data-route-id'))).toEqual([
      'bike-share',
      'walk-park',
      'taxi-door',
    ]);
    const defaults = container.querySelectorAll('.route-card.default');
    expect(defaults).toHaveLength(1);
    expect(defaults[0].getAttribute('data-route-id')).toBe('bike-share');
    const badgeSets = cards.map((card) =>
      [...card.querySelectorAll('.badge')].map((chip) => chip.getAttribute('data-badge')),
    );
    expect(badgeSets).toEqual([['acceptable_walk', 'promoted_mode'], [], ['unfamiliar']]);
  });

  it('shows the service status for an empty recommendation', () => {
    renderRouteRecommendation(container, { entries: [], status: 'no feasible routes', truncated_to: 5 });
    expect(container.querySelector('.empty-state')?.textContent).toBe('no feasible routes');
  });

  it('wires the select handler to the route id', () => {
    const selected: string[] = [];
    renderRouteRecommendation(container, payload, { onSelect: (id) => selected.push(id) });
    const button = container.querySelector<HTMLButtonElement>(
      '.route-card[data-route-id="taxi-door"] button.take-trip',
    )!;
    button.click();
    expect(selected).toEqual(['taxi-door']);
  });
});
