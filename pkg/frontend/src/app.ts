/**
 * DOM wiring: render the state machine, dispatch the seven actions.
 * Tweet text always goes through textContent, never markup.
 */

import { fetchRandomTweet, getOrCreateSessionId, postAnnotation } from "./api.js";
import {
  UiState,
  Vote,
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
} from "./state.js";

interface Elements {
  tweetText: HTMLElement;
  status: HTMLElement;
  tally: HTMLElement;
  buttons: Map<Vote, HTMLButtonElement>;
  retry: HTMLButtonElement;
}

export class AnnotationApp {
  state: UiState = initialState();

  constructor(
    private readonly els: Elements,
    private readonly session: string,
  ) {}

  render(): void {
    const { phase, tweet, tally, message } = this.state;
    this.els.tweetText.textContent = tweet ? tweet.text : "";
    for (const button of this.els.buttons.values()) {
      button.disabled = phase !== "showing";
      button.hidden = phase === "exhausted";
    }
    this.els.retry.hidden = phase !== "error";
    this.els.tally.textContent = `Anotaciones enviadas: ${totalVotes(tally)}`;
    if (phase === "loading") {
      this.els.status.textContent = "Cargando...";
    } else if (phase === "exhausted") {
      this.els.status.textContent = "No quedan más tweets para esta sesión. ¡Gracias!";
    } else if (phase === "error") {
      this.els.status.textContent = message ?? "Error de red";
    } else {
      this.els.status.textContent = message ?? "";
    }
  }

  async loadNext(): Promise<void> {
    try {
      const result = await fetchRandomTweet(this.session);
      this.state =
        result.kind === "exhausted"
          ? poolExhausted(this.state)
          : tweetLoaded(this.state, result.tweet);
    } catch (err) {
      this.state = loadFailed(this.state, `No se pudo cargar: ${String(err)}`);
    }
    this.render();
  }

  async retry(): Promise<void> {
    this.state = retryLoad(this.state);
    this.render();
    await this.loadNext();
  }

  async submitVote(vote: Vote): Promise<void> {
    if (this.state.phase !== "showing" || !this.state.tweet) {
      return; // button lockout: only one vote may ever be in flight
    }
    const tweetId = this.state.tweet.id;
    this.state = voteStarted(this.state);
    this.render();
    try {
      await postAnnotation(this.session, tweetId, vote);
      this.state = voteAccepted(this.state, vote);
      this.render();
      await this.loadNext();
    } catch (err) {
      this.state = voteRejected(this.state, `No se pudo enviar, probá de nuevo: ${String(err)}`);
      this.render();
    }
  }
}

export function collectElements(doc: Document): Elements {
  const byId = (id: string) => {
    const el = doc.getElementById(id);
    if (!el) {
      throw new Error(`missing element #${id}`);
    }
    return el;
  };
  const buttons = new Map<Vote, HTMLButtonElement>();
  for (let n = 1; n <= 5; n += 1) {
    buttons.set(starVote(n), byId(`vote-star${n}`) as HTMLButtonElement);
  }
  buttons.set("not_humor", byId("vote-not-humor") as HTMLButtonElement);
  buttons.set("skip", byId("vote-skip") as HTMLButtonElement);
  return {
    tweetText: byId("tweet-text"),
    status: byId("status"),
    tally: byId("tally"),
    buttons,
    retry: byId("retry") as HTMLButtonElement,
  };
}

export function bootstrap(doc: Document, storage: Storage): AnnotationApp {
  const els = collectElements(doc);
  const app = new AnnotationApp(els, getOrCreateSessionId(storage));
  for (const [vote, button] of els.buttons) {
    button.addEventListener("click", () => void app.submitVote(vote));
  }
  els.retry.addEventListener("click", () => void app.retry());
  app.render();
  void app.loadNext();
  return app;
}

declare const window: (Window & typeof globalThis) | undefined;

// auto-start only on the real page (module scripts load after the markup)
if (
  typeof window !== "undefined" &&
  typeof document !== "undefined" &&
  document.getElementById("tweet-text")
) {
  bootstrap(document, window.localStorage);
}
