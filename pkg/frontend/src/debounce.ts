// Slider and text edits fire on every keystroke; requests wait for a quiet
// 250 ms and stale responses lose to newer ones.

export const EDIT_DEBOUNCE_MS = 250;

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number = EDIT_DEBOUNCE_MS,
): (...args: A) => void {
  let handle: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (handle !== undefined) clearTimeout(handle);
    handle = setTimeout(() => fn(...args), waitMs);
  };
}

/** Latest-wins async gate: each start() invalidates everything before it,
 * so an in-flight request superseded by a newer edit never lands. */
export class LatestWins {
  private ticket = 0;

  start(): number {
    return ++this.ticket;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.ticket;
  }
}
