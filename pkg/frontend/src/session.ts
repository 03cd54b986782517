/* Participant session state. Phases only move forward: a participant who
 * reached the trials cannot wander back and edit their color ratings. */

export type Phase = "rating" | "trials" | "done";

const ORDER: Phase[] = ["rating", "trials", "done"];

export const RATING_COUNT = 12;

export class Session {
  userId = "";
  phase: Phase = "rating";
  trialIndex = 0;
  pendingPair: [string, string] | null = null;
  private ratedCount = 0;

  get ratingsComplete(): boolean {
    return this.ratedCount >= RATING_COUNT;
  }

  /** Record that the server accepted a full rating profile. */
  markRatingsSubmitted(count: number): void {
    if (count !== RATING_COUNT) {
      throw new Error(`expected ${RATING_COUNT} ratings, got ${count}`);
    }
    this.ratedCount = count;
  }

  advance(next: Phase): void {
    const from = ORDER.indexOf(this.phase);
    const to = ORDER.indexOf(next);
    if (to !== from + 1) {
      throw new Error(`cannot move from ${this.phase} to ${next}`);
    }
    if (next === "trials") {
      if (!this.userId) throw new Error("no user for this session");
      if (!this.ratingsComplete) {
        throw new Error("all 12 color ratings must be submitted first");
      }
    }
    this.phase = next;
  }

  startTrial(pair: [string, string]): void {
    if (this.phase !== "trials") throw new Error("not in the trials phase");
    this.pendingPair = pair;
  }

  finishTrial(): void {
    if (this.pendingPair === null) throw new Error("no trial in progress");
    this.pendingPair = null;
    this.trialIndex += 1;
  }
}
