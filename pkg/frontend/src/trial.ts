/* Paired comparison screen. The server owns the pair order and the side
 * randomization; the runner here just walks /next until it reports done.
 * Choices go by click or by left/right arrow key. */

import { ApiError, ImageRow, NextTrial, TrialResult } from "./api.js";
import { Session } from "./session.js";

export interface TrialApi {
  nextTrial(studyId: string, userId: string): Promise<NextTrial>;
  postTrial(
    studyId: string,
    userId: string,
    pair: [string, string],
    choice: string,
  ): Promise<TrialResult>;
}

export interface ScreenApi extends TrialApi {
  imageUrl(imageId: string): string;
  listImages(): Promise<ImageRow[]>;
}

export interface TrialView {
  showPair(leftImage: string, rightImage: string, index: number): void;
  showDone(): void;
}

export type Side = "left" | "right";

export class TrialRunner {
  posted = 0;
  private busy = false;
  private current: NextTrial | null = null;

  constructor(
    private api: TrialApi,
    private studyId: string,
    private session: Session,
    private view: TrialView,
  ) {}

  get finished(): boolean {
    return this.session.phase === "done";
  }

  async start(): Promise<void> {
    await this.load();
  }

  /** Submit the image currently on `side`. Returns false when the input
   *  was ignored (submission already in flight, or the study is over). */
  async choose(side: Side): Promise<boolean> {
    if (this.busy || this.current === null) return false;
    this.busy = true;
    const cur = this.current;
    const choice = side === "left" ? cur.leftImage! : cur.rightImage!;
    try {
      try {
        await this.api.postTrial(
          this.studyId,
          this.session.userId,
          cur.pair as [string, string],
          choice,
        );
        this.posted += 1;
      } catch (err) {
        // Already recorded (another tab, a retry): keep walking.
        if (!(err instanceof ApiError && err.status === 409)) throw err;
      }
      this.session.finishTrial();
      await this.load();
    } finally {
      this.busy = false;
    }
    return true;
  }

  private async load(): Promise<void> {
    const nxt = await this.api.nextTrial(this.studyId, this.session.userId);
    if (nxt.done) {
      this.current = null;
      this.session.advance("done");
      this.view.showDone();
      return;
    }
    this.current = nxt;
    this.session.startTrial(nxt.pair as [string, string]);
    this.view.showPair(nxt.leftImage!, nxt.rightImage!, this.session.trialIndex);
  }
}

/** Warm the browser cache so upcoming trials render without a fetch stall. */
export function preloadImages(
  api: Pick<ScreenApi, "imageUrl">,
  imageIds: string[],
): void {
  for (const id of imageIds) {
    const img = new Image();
    img.src = api.imageUrl(id);
  }
}

export function renderTrialScreen(
  root: HTMLElement,
  api: ScreenApi,
  studyId: string,
  session: Session,
  onDone: () => void,
): TrialRunner {
  root.innerHTML = "";

  const heading = document.createElement("h2");
  heading.textContent = "Which room do you prefer?";
  root.appendChild(heading);

  const progress = document.createElement("p");
  progress.className = "hint";
  root.appendChild(progress);

  const stage = document.createElement("div");
  stage.className = "trial-stage";
  const leftImg = document.createElement("img");
  const rightImg = document.createElement("img");
  leftImg.className = "trial-img";
  rightImg.className = "trial-img";
  leftImg.alt = "left option";
  rightImg.alt = "right option";
  stage.append(leftImg, rightImg);
  root.appendChild(stage);

  const hint = document.createElement("p");
  hint.className = "hint";
  hint.textContent = "Click an image, or press the left / right arrow key.";
  root.appendChild(hint);

  const view: TrialView = {
    showPair(left, right, index) {
      progress.textContent = `Trial ${index + 1}`;
      leftImg.src = api.imageUrl(left);
      rightImg.src = api.imageUrl(right);
    },
    showDone() {
      document.removeEventListener("keydown", onKey);
      onDone();
    },
  };

  const runner = new TrialRunner(api, studyId, session, view);

  leftImg.addEventListener("click", () => void runner.choose("left"));
  rightImg.addEventListener("click", () => void runner.choose("right"));
  function onKey(ev: KeyboardEvent) {
    if (ev.key === "ArrowLeft") void runner.choose("left");
    else if (ev.key === "ArrowRight") void runner.choose("right");
  }
  document.addEventListener("keydown", onKey);

  // Pull every image in the corpus into cache up front; with study sizes
  // this small it is cheaper than guessing which pair comes next.
  api.listImages().then(
    (rows) => preloadImages(api, rows.map((r) => r.imageId)),
    () => undefined,
  );

  void runner.start();
  return runner;
}
