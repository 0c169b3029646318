// DOM form for the questionnaire. The submit button stays disabled until
// every question and every willingness slider has been answered; sliders
// count as answered only after the user touches them.

import {
  FREQUENCY_OPTIONS,
  PLAN_MODES,
  QuestionnaireState,
  WILLINGNESS_MAX_LABEL,
  WILLINGNESS_MIN_LABEL,
  emptyState,
  isComplete,
  type PlanMode,
} from '../questionnaire.js';

const USAGE_FIELDS: Array<{ key: keyof QuestionnaireState; mode: PlanMode; question: string }> = [
  { key: 'publicTransportUsage', mode: 'public_transport', question: 'How often do you use public transport?' },
  { key: 'taxiUsage', mode: 'taxi', question: 'How often do you use taxi services?' },
  { key: 'bikeSharingUsage', mode: 'bike_sharing', question: 'How often do you cycle?' },
  { key: 'carSharingUsage', mode: 'car_sharing', question: 'How often do you use car sharing?' },
];

const MODE_LABELS: Record<PlanMode, string> = {
  public_transport: 'Public transport',
  taxi: 'Taxi',
  bike_sharing: 'Bike sharing',
  car_sharing: 'Car sharing',
};

export interface QuestionnaireView {
  element: HTMLFormElement;
  state: QuestionnaireState;
  submitButton: HTMLButtonElement;
  refresh(): void;
}

function yesNoQuestion(
  name: string,
  question: string,
  onAnswer: (value: boolean) => void,
): HTMLElement {
  const wrapper = document.createElement('fieldset');
  wrapper.className = 'question';
  wrapper.dataset.question = name;
  const legend = document.createElement('legend');
  legend.textContent = question;
  wrapper.append(legend);
  for (const value of ['yes', 'no']) {
    const label = document.createElement('label');
    const input = document.createElement('input');
    input.type = 'radio';
    input.name = name;
    input.value = value;
    input.addEventListener('change', () => onAnswer(value === 'yes'));
    label.append(input, document.createTextNode(value === 'yes' ? 'Yes' : 'No'));
    wrapper.append(label);
  }
  return wrapper;
}

function frequencyQuestion(
  name: string,
  question: string,
  onAnswer: (token: string) => void,
): HTMLElement {
  const wrapper = document.createElement('div');
  wrapper.className = 'question';
  wrapper.dataset.question = name;
  const label = document.createElement('label');
  label.textContent = question;
  const select = document.createElement('select');
  select.name = name;
  const placeholder = document.createElement('option');
  placeholder.value = '';
  placeholder.textContent = 'Choose...';
  placeholder.disabled = true;
  placeholder.selected = true;
  select.append(placeholder);
  for (const option of FREQUENCY_OPTIONS) {
    const element = document.createElement('option');
    element.value = option.token;
    element.textContent = option.label;
    select.append(element);
  }
  select.addEventListener('change', () => onAnswer(select.value));
  label.append(select);
  wrapper.append(label);
  return wrapper;
}

function willingnessSlider(mode: PlanMode, onAnswer: (value: number) => void): HTMLElement {
  const wrapper = document.createElement('div');
  wrapper.className = 'slider';
  wrapper.dataset.slider = mode;
  const label = document.createElement('label');
  label.textContent = MODE_LABELS[mode];
  const low = document.createElement('span');
  low.className = 'slider-min';
  low.textContent = WILLINGNESS_MIN_LABEL;
  const input = document.createElement('input');
  input.type = 'range';
  input.min = '1';
  input.max = '5';
  input.step = '1';
  input.value = '3';
  input.name = `willingness_${mode}`;
  const high = document.createElement('span');
  high.className = 'slider-max';
  high.textContent = WILLINGNESS_MAX_LABEL;
  const report = () => onAnswer(Number(input.value));
  input.addEventListener('input', report);
  input.addEventListener('change', report);
  wrapper.append(label, low, input, high);
  return wrapper;
}

function numberField(
  name: string,
  labelText: string,
  initial: number | null,
  onChange: (value: number | null) => void,
): HTMLElement {
  const wrapper = document.createElement('div');
  wrapper.className = 'field';
  const label = document.createElement('label');
  label.textContent = labelText;
  const input = document.createElement('input');
  input.type = 'number';
  input.name = name;
  input.min = '0';
  if (initial !== null) input.value = String(initial);
  input.addEventListener('change', () => {
    onChange(input.value === '' ? null : Number(input.value));
  });
  label.append(input);
  wrapper.append(label);
  return wrapper;
}

export function buildQuestionnaire(onSubmit: (state: QuestionnaireState) => void): QuestionnaireView {
  const state = emptyState();
  const form = document.createElement('form');
  form.id = 'questionnaire';

  const submitButton = document.createElement('button');
  submitButton.type = 'submit';
  submitButton.textContent = 'Find my plans';
  submitButton.disabled = true;

  const refresh = () => {
    submitButton.disabled = !isComplete(state);
  };

  form.append(
    yesNoQuestion('driving_license', 'Do you hold a full driving license?', (v) => {
      state.drivingLicense = v;
      refresh();
    }),
    yesNoQuestion('fare_reductions', 'Are you eligible for any public transport travel fare reductions?', (v) => {
      state.fareReductions = v;
      refresh();
    }),
  );
  for (const field of USAGE_FIELDS) {
    form.append(
      frequencyQuestion(`${field.mode}_usage`, field.question, (token) => {
        (state as unknown as Record<string, unknown>)[field.key] = token;
        refresh();
      }),
    );
  }

  const sliders = document.createElement('div');
  sliders.className = 'sliders';
  const slidersTitle = document.createElement('p');
  slidersTitle.textContent =
    'How willing are you to include the following modes of transport in your plan?';
  sliders.append(slidersTitle);
  for (const mode of PLAN_MODES) {
    sliders.append(
      willingnessSlider(mode, (value) => {
        state.willingness[mode] = value;
        refresh();
      }),
    );
  }
  form.append(sliders);

  const cycling = document.createElement('label');
  cycling.className = 'field';
  const cyclingInput = document.createElement('input');
  cyclingInput.type = 'checkbox';
  cyclingInput.name = 'can_cycle';
  cyclingInput.checked = true;
  cyclingInput.addEventListener('change', () => {
    state.canCycle = cyclingInput.checked;
  });
  cycling.append(cyclingInput, document.createTextNode(' I am able to ride a bicycle'));
  form.append(cycling);

  form.append(
    numberField('budget', 'Monthly budget (optional)', null, (v) => {
      state.budget = v;
    }),
    numberField('max_walk_m', 'Longest acceptable walk (m)', state.maxWalkM, (v) => {
      state.maxWalkM = v ?? 1500;
    }),
    numberField('max_bike_m', 'Longest acceptable ride (m)', state.maxBikeM, (v) => {
      state.maxBikeM = v ?? 5000;
    }),
  );

  form.append(submitButton);
  form.addEventListener('submit', (event) => {
    event.preventDefault();
    if (isComplete(state)) {
      onSubmit(state);
    }
  });

  return { element: form, state, submitButton, refresh };
}
