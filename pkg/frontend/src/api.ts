/** Thin client for the annotation service HTTP/JSON API. */

import type { TweetView, Vote } from "./state.js";

export type RandomTweetResult =
  | { kind: "tweet"; tweet: TweetView }
  | { kind: "exhausted" };

export async function fetchRandomTweet(session: string): Promise<RandomTweetResult> {
  const resp = await fetch(`/api/tweet/random?session=${encodeURIComponent(session)}`);
  if (resp.status === 410) {
    return { kind: "exhausted" };
  }
  if (!resp.ok) {
    throw new Error(`random tweet failed: HTTP ${resp.status}`);
  }
  const body = (await resp.json()) as { id: string; text: string };
  return { kind: "tweet", tweet: { id: body.id, text: body.text } };
}

export async function postAnnotation(
  session: string,
  tweetId: string,
  vote: Vote,
): Promise<void> {
  const resp = await fetch("/api/annotation", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ session, tweet_id: tweetId, vote }),
  });
  if (resp.status !== 201) {
    throw new Error(`vote rejected: HTTP ${resp.status}`);
  }
}

const SESSION_KEY = "humorkit-session";

/** Session id persisted locally; clearing storage starts a new session. */
export function getOrCreateSessionId(storage: Pick<Storage, "getItem" | "setItem">): string {
  const existing = storage.getItem(SESSION_KEY);
  if (existing) {
    return existing;
  }
  const fresh = `s-${Date.now().toString(36)}-${Math.random().toString(36).slice(2, 10)}`;
  storage.setItem(SESSION_KEY, fresh);
  return fresh;
}
