/* Operator dashboard: fetches a study report and shows it as-is.
 *
 * Hit rates are lifted out of the raw response text rather than printed
 * from the parsed numbers. JSON.parse followed by String() is lossy in
 * the corners (1.0 re-prints as "1"), and the dashboard must show exactly
 * what the API said. */

import { ApiClient, StudyReport } from "./api.js";

export interface RawRates {
  overall: string | null;
  perUser: Record<string, string | null>;
}

function escapeRegExp(s: string): string {
  return s.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}

function rateToken(text: string, objectKey: string): string | null {
  const re = new RegExp(
    `"${escapeRegExp(objectKey)}"\\s*:\\s*\\{[^{}]*?"hitRate"\\s*:\\s*([^,}\\s]+)`,
  );
  const m = re.exec(text);
  return m ? m[1] : null;
}

/** Pull each hitRate out of the report body verbatim, bytes untouched. */
export function rawHitRates(text: string): RawRates {
  const report: StudyReport = JSON.parse(text);
  const perUser: Record<string, string | null> = {};
  for (const userId of Object.keys(report.perUser)) {
    perUser[userId] = rateToken(text, userId);
  }
  return { overall: rateToken(text, "overall"), perUser };
}

function rateCell(token: string | null): string {
  return token === null || token === "null" ? "n/a" : token;
}

export function renderDashboard(
  root: HTMLElement,
  api: Pick<ApiClient, "reportRaw">,
  initialStudyId = "",
): { load: (studyId: string) => Promise<void> } {
  root.innerHTML = "";

  const heading = document.createElement("h2");
  heading.textContent = "Study report";
  root.appendChild(heading);

  const controls = document.createElement("div");
  controls.className = "dash-controls";
  const input = document.createElement("input");
  input.type = "text";
  input.placeholder = "study id";
  input.value = initialStudyId;
  const button = document.createElement("button");
  button.textContent = "Load";
  controls.append(input, button);
  root.appendChild(controls);

  const status = document.createElement("p");
  status.className = "hint";
  root.appendChild(status);

  const table = document.createElement("table");
  table.className = "report-table";
  root.appendChild(table);

  async function load(studyId: string): Promise<void> {
    table.innerHTML = "";
    status.textContent = "";
    let text: string;
    let report: StudyReport;
    try {
      ({ text, report } = await api.reportRaw(studyId));
    } catch (err) {
      status.textContent = String(err);
      return;
    }
    const rates = rawHitRates(text);

    const head = table.createTHead().insertRow();
    for (const title of ["participant", "hits", "trials", "expected", "hit rate"]) {
      const th = document.createElement("th");
      th.textContent = title;
      head.appendChild(th);
    }

    const body = table.createTBody();
    for (const [userId, stats] of Object.entries(report.perUser)) {
      const row = body.insertRow();
      row.insertCell().textContent = userId;
      row.insertCell().textContent = String(stats.hits);
      row.insertCell().textContent = String(stats.trials);
      row.insertCell().textContent = String(stats.expectedTrials);
      const cell = row.insertCell();
      cell.className = "hit-rate";
      cell.dataset.user = userId;
      cell.textContent = rateCell(rates.perUser[userId]);
    }

    const overall = body.insertRow();
    overall.className = "overall";
    overall.insertCell().textContent = "overall";
    overall.insertCell().textContent = String(report.overall.hits);
    overall.insertCell().textContent = String(report.overall.trials);
    overall.insertCell().textContent = String(report.overall.expectedTrials);
    const cell = overall.insertCell();
    cell.className = "hit-rate";
    cell.dataset.user = "overall";
    cell.textContent = rateCell(rates.overall);

    status.textContent = report.complete
      ? `Study ${report.studyId} is complete.`
      : `Study ${report.studyId} is still running.`;
  }

  button.addEventListener("click", () => void load(input.value.trim()));
  if (initialStudyId) void load(initialStudyId);

  return { load };
}
