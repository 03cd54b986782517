/* Entry point. Routes on query params:
 *   ?view=dashboard[&study=s1]   operator report view
 *   ?study=s1[&user=u1]          participant flow: rate colors, then trials
 * The server decides where a returning participant resumes; reloading the
 * page mid-study lands on the same trial. */

import { ApiClient, ApiError } from "./api.js";
import { renderDashboard } from "./dashboard.js";
import { renderRatingScreen } from "./rating.js";
import { Session, RATING_COUNT } from "./session.js";
import { renderTrialScreen } from "./trial.js";

const USER_KEY = "roompref-user";

function appRoot(): HTMLElement {
  const el = document.getElementById("app");
  if (!el) throw new Error("missing #app container");
  return el;
}

function showMessage(root: HTMLElement, title: string, body: string): void {
  root.innerHTML = "";
  const h = document.createElement("h2");
  h.textContent = title;
  const p = document.createElement("p");
  p.textContent = body;
  root.append(h, p);
}

function renderSignin(root: HTMLElement, onName: (name: string) => void): void {
  root.innerHTML = "";
  const h = document.createElement("h2");
  h.textContent = "Welcome";
  const p = document.createElement("p");
  p.textContent = "Enter a name to join the study.";
  const input = document.createElement("input");
  input.type = "text";
  input.placeholder = "your name";
  const button = document.createElement("button");
  button.textContent = "Start";
  const submit = () => {
    const name = input.value.trim();
    if (name) onName(name);
  };
  button.addEventListener("click", submit);
  input.addEventListener("keydown", (ev) => {
    if (ev.key === "Enter") submit();
  });
  root.append(h, p, input, button);
}

async function hasRatings(api: ApiClient, userId: string): Promise<boolean> {
  try {
    const ratings = await api.getRatings(userId);
    return Object.keys(ratings).length === RATING_COUNT;
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) return false;
    throw err;
  }
}

function startTrials(
  root: HTMLElement,
  api: ApiClient,
  session: Session,
  studyId: string | null,
): void {
  if (!studyId) {
    showMessage(
      root,
      "Ratings saved",
      `You are registered as ${session.userId}. ` +
        "You will get a study link when the comparisons are ready.",
    );
    return;
  }
  session.advance("trials");
  renderTrialScreen(root, api, studyId, session, () => {
    showMessage(root, "All done", "Thanks for taking part!");
  });
}

async function runParticipant(
  root: HTMLElement,
  api: ApiClient,
  params: URLSearchParams,
): Promise<void> {
  const session = new Session();
  const studyId = params.get("study");
  const fromUrl = params.get("user");
  if (fromUrl) sessionStorage.setItem(USER_KEY, fromUrl);
  const knownUser = fromUrl ?? sessionStorage.getItem(USER_KEY);

  const toRating = async (userId: string) => {
    session.userId = userId;
    const colors = await api.getColors();
    renderRatingScreen(root, colors, async (ratings) => {
      await api.submitRatings(userId, ratings);
      session.markRatingsSubmitted(Object.keys(ratings).length);
      startTrials(root, api, session, studyId);
    });
  };

  if (knownUser && (await hasRatings(api, knownUser))) {
    session.userId = knownUser;
    session.markRatingsSubmitted(RATING_COUNT);
    startTrials(root, api, session, studyId);
  } else if (knownUser) {
    await toRating(knownUser);
  } else {
    renderSignin(root, async (name) => {
      const userId = await api.createUser(name);
      sessionStorage.setItem(USER_KEY, userId);
      await toRating(userId);
    });
  }
}

async function main(): Promise<void> {
  const root = appRoot();
  const api = new ApiClient();
  const params = new URLSearchParams(location.search);
  try {
    if (params.get("view") === "dashboard") {
      renderDashboard(root, api, params.get("study") ?? "");
    } else {
      await runParticipant(root, api, params);
    }
  } catch (err) {
    showMessage(root, "Something went wrong", String(err));
  }
}

void main();
