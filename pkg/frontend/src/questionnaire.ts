// Questionnaire state: the six elicitation questions plus the four
// willingness sliders gate submission; thresholds and budget are optional
// extras with defaults.

import type { ProfileDocument } from './api.js';

export const PLAN_MODES = ['public_transport', 'taxi', 'bike_sharing', 'car_sharing'] as const;
export type PlanMode = (typeof PLAN_MODES)[number];

export const FREQUENCY_OPTIONS = [
  { token: 'never', label: 'Never' },
  { token: 'few_times_per_year', label: 'A few times a year' },
  { token: 'times_per_month:2', label: 'A couple of times a month' },
  { token: 'times_per_week:2', label: 'A few times a week' },
  { token: 'once_per_day', label: 'Every day' },
] as const;

// Slider endpoints, 1 = "Very much", 5 = "Totally not".
export const WILLINGNESS_MIN_LABEL = 'Very much';
export const WILLINGNESS_MAX_LABEL = 'Totally not';

export interface QuestionnaireState {
  drivingLicense: boolean | null;
  fareReductions: boolean | null;
  publicTransportUsage: string | null;
  taxiUsage: string | null;
  bikeSharingUsage: string | null;
  carSharingUsage: string | null;
  willingness: Record<PlanMode, number | null>;
  canCycle: boolean;
  maxWalkM: number;
  maxBikeM: number;
  budget: number | null;
}

export function emptyState(): QuestionnaireState {
  return {
    drivingLicense: null,
    fareReductions: null,
    publicTransportUsage: null,
    taxiUsage: null,
    bikeSharingUsage: null,
    carSharingUsage: null,
    willingness: {
      public_transport: null,
      taxi: null,
      bike_sharing: null,
      car_sharing: null,
    },
    canCycle: true,
    maxWalkM: 1500,
    maxBikeM: 5000,
    budget: null,
  };
}

export function missingAnswers(state: QuestionnaireState): string[] {
  const missing: string[] = [];
  if (state.drivingLicense === null) missing.push('driving_license');
  if (state.fareReductions === null) missing.push('fare_reductions');
  if (state.publicTransportUsage === null) missing.push('public_transport_usage');
  if (state.taxiUsage === null) missing.push('taxi_usage');
  if (state.bikeSharingUsage === null) missing.push('bike_sharing_usage');
  if (state.carSharingUsage === null) missing.push('car_sharing_usage');
  for (const mode of PLAN_MODES) {
    if (state.willingness[mode] === null) missing.push(`willingness_${mode}`);
  }
  return missing;
}

export function isComplete(state: QuestionnaireState): boolean {
  return missingAnswers(state).length === 0;
}

export function toProfileDocument(state: QuestionnaireState): ProfileDocument {
  if (!isComplete(state)) {
    throw new Error(`questionnaire incomplete: ${missingAnswers(state).join(', ')}`);
  }
  const profile: ProfileDocument = {
    driving_license: state.drivingLicense as boolean,
    can_cycle: state.canCycle,
    fare_reductions: state.fareReductions as boolean,
    usage: {
      public_transport: state.publicTransportUsage as string,
      taxi: state.taxiUsage as string,
      bike_sharing: state.bikeSharingUsage as string,
      car_sharing: state.carSharingUsage as string,
    },
    willingness: {
      public_transport: state.willingness.public_transport as number,
      taxi: state.willingness.taxi as number,
      bike_sharing: state.willingness.bike_sharing as number,
      car_sharing: state.willingness.car_sharing as number,
    },
    max_walk_m: state.maxWalkM,
    max_bike_m: state.maxBikeM,
  };
  if (state.budget !== null) {
    profile.budget = state.budget;
  }
  return profile;
}
