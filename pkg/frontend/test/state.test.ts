import { describe, expect, it } from "vitest";

import {
  VOTES,
  initialState,
  loadFailed,
  poolExhausted,
  retryLoad,
  starVote,
  totalVotes,
  tweetLoaded,
  voteAccepted,
  voteRejected,
  voteStarted,
} from "../src/state.js";

const tweet = { id: "t1", text: "hola" };

describe("state machine", () => {
  it("starts loading with an empty tally", () => {
    const s = initialState();
    expect(s.phase).toBe("loading");
    expect(totalVotes(s.tally)).toBe(0);
  });

  it("walks the happy path loading -> showing -> submitting -> loading", () => {
    let s = initialState();
    s = tweetLoaded(s, tweet);
    expect(s.phase).toBe("showing");
    expect(s.tweet).toEqual(tweet);
    s = voteStarted(s);
    expect(s.phase).toBe("submitting");
    s = voteAccepted(s, "star4");
    expect(s.phase).toBe("loading");
    expect(s.tally.star4).toBe(1);
    expect(s.tweet).toBeNull();
  });

  it("keeps the same tweet and tally when the server rejects", () => {
    let s = tweetLoaded(initialState(), tweet);
    s = voteStarted(s);
    s = voteRejected(s, "HTTP 500");
    expect(s.phase).toBe("showing");
    expect(s.tweet).toEqual(tweet);
    expect(totalVotes(s.tally)).toBe(0);
    expect(s.message).toContain("500");
  });

  it("exhaustion is reachable only from loading and is terminal", () => {
    const s = poolExhausted(initialState());
    expect(s.phase).toBe("exhausted");
    expect(() => tweetLoaded(s, tweet)).toThrow(/illegal/);
    expect(() => voteStarted(s)).toThrow(/illegal/);
  });

  it("errors offer a retry that goes back to loading", () => {
    let s = loadFailed(initialState(), "offline");
    expect(s.phase).toBe("error");
    s = retryLoad(s);
    expect(s.phase).toBe("loading");
  });

  it("rejects voting outside of showing (single in-flight vote)", () => {
    expect(() => voteStarted(initialState())).toThrow(/illegal/);
    const submitting = voteStarted(tweetLoaded(initialState(), tweet));
    expect(() => voteStarted(submitting)).toThrow(/illegal/);
  });

  it("has exactly the five documented phases across all transitions", () => {
    const seen = new Set<string>();
    let s = initialState();
    seen.add(s.phase);
    s = tweetLoaded(s, tweet);
    seen.add(s.phase);
    s = voteStarted(s);
    seen.add(s.phase);
    s = voteAccepted(s, "skip");
    seen.add(s.phase);
    s = loadFailed(s, "x");
    seen.add(s.phase);
    s = retryLoad(s);
    seen.add(poolExhausted(s).phase);
    expect([...seen].sort()).toEqual(["error", "exhausted", "loading", "showing", "submitting"]);
  });

  it("tallies every vote kind independently", () => {
    let s = initialState();
    for (const vote of VOTES) {
      s = tweetLoaded(s, tweet);
      s = voteStarted(s);
      s = voteAccepted(s, vote);
      expect(s.tally[vote]).toBe(1);
    }
    expect(totalVotes(s.tally)).toBe(7);
  });

  it("maps star numbers to wire strings", () => {
    expect(starVote(4)).toBe("star4");
    expect(starVote(1)).toBe("star1");
    expect(() => starVote(0)).toThrow();
    expect(() => starVote(6)).toThrow();
  });
});
