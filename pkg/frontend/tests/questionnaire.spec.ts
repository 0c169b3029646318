import { beforeEach, describe, expect, it } from 'vitest';

import { emptyState, isComplete, missingAnswers, toProfileDocument } from '../src/questionnaire.js';
import { buildQuestionnaire } from '../src/views/questionnaire.js';

function answeredState() {
  const state = emptyState();
  state.drivingLicense = false;
  state.fareReductions = false;
  state.publicTransportUsage = 'once_per_day';
  state.taxiUsage = 'never';
  state.bikeSharingUsage = 'times_per_week:2';
  state.carSharingUsage = 'few_times_per_year';
  state.willingness = { public_transport: 1, taxi: 4, bike_sharing: 2, car_sharing: 3 };
  return state;
}

describe('questionnaire state', () => {
  it('starts incomplete with every question and slider missing', () => {
    const missing = missingAnswers(emptyState());
    expect(missing).toHaveLength(10); // 6 questions + 4 sliders
    expect(isComplete(emptyState())).toBe(false);
  });

  it('is complete only when all six questions and four sliders are answered', () => {
    const state = answeredState();
    expect(isComplete(state)).toBe(true);
    state.willingness.taxi = null;
    expect(isComplete(state)).toBe(false);
  });

  it('maps answers to the profile wire document', () => {
    const state = answeredState();
    state.budget = 18000;
    state.maxWalkM = 1200;
    const doc = toProfileDocument(state);
    expect(doc).toEqual({
      driving_license: false,
      can_cycle: true,
      fare_reductions: false,
      usage: {
        public_transport: 'once_per_day',
        taxi: 'never',
        bike_sharing: 'times_per_week:2',
        car_sharing: 'few_times_per_year',
      },
      willingness: { public_transport: 1, taxi: 4, bike_sharing: 2, car_sharing: 3 },
      max_walk_m: 1200,
      max_bike_m: 5000,
      budget: 18000,
    });
  });

  it('omits the budget when not set and refuses incomplete states', () => {
    const state = answeredState();
    expect('budget' in toProfileDocument(state)).toBe(false);
    state.drivingLicense = null;
    expect(() => toProfileDocument(state)).toThrow(/incomplete/);
  });
});

describe('questionnaire form', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  function answerYesNo(form: HTMLElement, name: string, value: 'yes' | 'no') {
    const input = form.querySelector<HTMLInputElement>(`input[name="${name}"][value="${value}"]`)!;
    input.checked = true;
    input.dispatchEvent(new Event('change'));
  }

  function answerFrequency(form: HTMLElement, name: string, token: string) {
    const select = form.querySelector<HTMLSelectElement>(`select[name="${name}"]`)!;
    select.value = token;
    select.dispatchEvent(new Event('change'));
  }

  function touchSlider(form: HTMLElement, mode: string, value: string) {
    const input = form.querySelector<HTMLInputElement>(`input[name="willingness_${mode}"]`)!;
    input.value = value;
    input.dispatchEvent(new Event('input'));
  }

  it('keeps submit disabled until every question and slider is answered', () => {
    let submitted = 0;
    const view = buildQuestionnaire(() => {
      submitted += 1;
    });
    document.body.append(view.element);
    const form = view.element;

    expect(view.submitButton.disabled).toBe(true);
    form.dispatchEvent(new Event('submit'));
    expect(submitted).toBe(0);

    answerYesNo(form, 'driving_license', 'no');
    answerYesNo(form, 'fare_reductions', 'no');
    answerFrequency(form, 'public_transport_usage', 'once_per_day');
    answerFrequency(form, 'taxi_usage', 'never');
    answerFrequency(form, 'bike_sharing_usage', 'times_per_week:2');
    touchSlider(form, 'public_transport', '1');
    touchSlider(form, 'taxi', '4');
    touchSlider(form, 'bike_sharing', '2');
    touchSlider(form, 'car_sharing', '3');
    // one question still unanswered
    expect(view.submitButton.disabled).toBe(true);
    form.dispatchEvent(new Event('submit'));
    expect(submitted).toBe(0);

    answerFrequency(form, 'car_sharing_usage', 'few_times_per_year');
    expect(view.submitButton.disabled).toBe(false);
    form.dispatchEvent(new Event('submit'));
    expect(submitted).toBe(1);
  });

  it('shows the willingness scale endpoints on every slider', () => {
    const view = buildQuestionnaire(() => {});
    document.body.append(view.element);
    const sliders = view.element.querySelectorAll('.slider');
    expect(sliders).toHaveLength(4);
    for (const slider of sliders) {
      expect(slider.querySelector('.slider-min')?.textContent).toBe('Very much');
      expect(slider.querySelector('.slider-max')?.textContent).toBe('Totally not');
    }
  });
});
