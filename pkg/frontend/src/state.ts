/**
 * UI state machine. Exactly five phases:
 *
 *   loading    -> showing (tweetLoaded) | exhausted (poolExhausted) | error (loadFailed)
 *   showing    -> submitting (voteStarted)
 *   submitting -> loading (voteAccepted) | showing (voteRejected; same tweet stays)
 *   error      -> loading (retry)
 *   exhausted  -> (terminal)
 *
 * Pure data + transition functions; the DOM layer only renders the result.
 * At most one vote is ever in flight: voting is legal only from `showing`.
 */

export const VOTES = [
  "star1",
  "star2",
  "star3",
  "star4",
  "star5",
  "not_humor",
  "skip",
] as const;

export type Vote = (typeof VOTES)[number];

export type Phase = "loading" | "showing" | "submitting" | "exhausted" | "error";

export interface TweetView {
  id: string;
  text: string;
}

export type Tally = Record<Vote, number>;

export interface UiState {
  phase: Phase;
  tweet: TweetView | null;
  tally: Tally;
  message: string | null;
}

export function emptyTally(): Tally {
  return { star1: 0, star2: 0, star3: 0, star4: 0, star5: 0, not_humor: 0, skip: 0 };
}

export function initialState(): UiState {
  return { phase: "loading", tweet: null, tally: emptyTally(), message: null };
}

function expect(state: UiState, allowed: Phase[], event: string): void {
  if (!allowed.includes(state.phase)) {
    throw new Error(`illegal transition: ${event} while ${state.phase}`);
  }
}

export function tweetLoaded(state: UiState, tweet: TweetView): UiState {
  expect(state, ["loading"], "tweetLoaded");
  return { ...state, phase: "showing", tweet, message: null };
}

export function poolExhausted(state: UiState): UiState {
  expect(state, ["loading"], "poolExhausted");
  return { ...state, phase: "exhausted", tweet: null, message: null };
}

export function loadFailed(state: UiState, message: string): UiState {
  expect(state, ["loading"], "loadFailed");
  return { ...state, phase: "error", tweet: null, message };
}

export function retryLoad(state: UiState): UiState {
  expect(state, ["error"], "retryLoad");
  return { ...state, phase: "loading", message: null };
}

export function voteStarted(state: UiState): UiState {
  expect(state, ["showing"], "voteStarted");
  return { ...state, phase: "submitting" };
}

export function voteAccepted(state: UiState, vote: Vote): UiState {
  expect(state, ["submitting"], "voteAccepted");
  const tally = { ...state.tally, [vote]: state.tally[vote] + 1 };
  return { phase: "loading", tweet: null, tally, message: null };
}

export function voteRejected(state: UiState, message: string): UiState {
  expect(state, ["submitting"], "voteRejected");
  // the same tweet stays on screen and the vote can be retried
  return { ...state, phase: "showing", message };
}

export function totalVotes(tally: Tally): number {
  return VOTES.reduce((sum, v) => sum + tally[v], 0);
}

export function starVote(n: number): Vote {
  if (!Number.isInteger(n) || n < 1 || n > 5) {
    throw new Error(`star value out of range: ${n}`);
  }
  return `star${n}` as Vote;
}
