// Route recommendation cards. Card order, scores, badges and the default
// highlight come verbatim from the payload; the view adds no ordering or
// scoring of its own.

import type { RouteRecommendationPayload } from '../api.js';

export interface RouteCardOptions {
  onSelect?: (routeId: string) => void;
}

const BADGE_LABELS: Record<string, string> = {
  acceptable_walk: 'walkable',
  acceptable_bike: 'bikeable',
  unfamiliar: 'new to you',
  promoted_mode: 'promoted mode',
  promoted_msp: 'promoted provider',
};

export function renderRouteRecommendation(
  container: HTMLElement,
  payload: RouteRecommendationPayload,
  options: RouteCardOptions = {},
): void {
  container.innerHTML = '';

  if (payload.entries.length === 0) {
    const empty = document.createElement('p');
    empty.className = 'empty-state';
    empty.textContent = payload.status === 'ok' ? 'No routes to show.' : payload.status;
    container.append(empty);
    return;
  }

  const list = document.createElement('ol');
  list.className = 'route-cards';
  for (const entry of payload.entries) {
    const card = document.createElement('li');
    card.className = entry.is_default ? 'route-card default' : 'route-card';
    card.dataset.routeId = entry.route_id;

    const title = document.createElement('span');
    title.className = 'route-title';
    title.textContent = entry.route_id;
    card.append(title);

    if (entry.is_default) {
      const mark = document.createElement('span');
      mark.className = 'default-mark';
      mark.textContent = 'suggested';
      card.append(mark);
    }

    const score = document.createElement('span');
    score.className = 'route-score';
    score.textContent = String(entry.score);
    card.append(score);

    const badges = document.createElement('span');
    badges.className = 'badges';
    for (const badge of entry.badges) {
      const chip = document.createElement('span');
      chip.className = 'badge';
      chip.dataset.badge = badge;
      chip.textContent = BADGE_LABELS[badge] ?? badge;
      badges.append(chip);
    }
    card.append(badges);

    if (options.onSelect) {
      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'take-trip';
      button.textContent = 'Take this trip';
      button.addEventListener('click', () => options.onSelect?.(entry.route_id));
      card.append(button);
    }

    list.append(card);
  }
  container.append(list);
}
