// Ranked-plan table. Row order is exactly the payload order; scores are
// rendered verbatim. Quotas and prices are display-only joins from the
// catalog document.

import type { CatalogDocument, PlanDocument, RankedPlansPayload } from '../api.js';

function quotaSummary(plan: PlanDocument | undefined): string {
  if (!plan || plan.quotas.length === 0) return '-';
  return plan.quotas
    .map((quota) => {
      const unit =
        quota.unit === 'monthly_pass_count'
          ? quota.amount === 1
            ? 'pass'
            : 'passes'
          : quota.unit === 'driving_hours'
            ? 'h'
            : '';
      const mode = quota.mode.replace(/_/g, ' ');
      return unit ? `${mode}: ${quota.amount} ${unit}` : `${mode}: ${quota.amount}`;
    })
    .join(', ');
}

export function renderPlanResults(
  container: HTMLElement,
  payload: RankedPlansPayload,
  catalog?: CatalogDocument,
): void {
  container.innerHTML = '';

  if (payload.fallback_used) {
    const banner = document.createElement('div');
    banner.className = 'fallback-banner';
    banner.textContent = payload.budget_applied
      ? 'No plan satisfies every requirement; showing plans within your budget instead.'
      : 'No plan satisfies every requirement; showing all plans ranked by similarity.';
    container.append(banner);
  }

  if (payload.entries.length === 0) {
    const empty = document.createElement('p');
    empty.className = 'empty-state';
    empty.textContent = 'No plans to show.';
    container.append(empty);
    return;
  }

  const table = document.createElement('table');
  table.className = 'plan-results';
  const head = document.createElement('tr');
  for (const title of ['#', 'Plan', 'Included', 'Price', 'Match']) {
    const cell = document.createElement('th');
    cell.textContent = title;
    head.append(cell);
  }
  table.append(head);

  const byId = new Map((catalog?.plans ?? []).map((plan) => [plan.id, plan]));
  payload.entries.forEach((entry, index) => {
    const plan = byId.get(entry.plan_id);
    const row = document.createElement('tr');
    row.dataset.planId = entry.plan_id;
    const cells = [
      String(index + 1),
      entry.plan_id,
      quotaSummary(plan),
      plan ? `${plan.price} ${plan.currency}` : '-',
      entry.score.toFixed(4),
    ];
    for (const text of cells) {
      const cell = document.createElement('td');
      cell.textContent = text;
      row.append(cell);
    }
    table.append(row);
  });
  container.append(table);
}
