/**
 * Trend chart: BMI and adipose percentage over a subject's sessions.
 *
 * Pure SVG construction from service session payloads. BMI plots against
 * the left axis with guide lines at the 25 and 30 cut-offs; the adipose
 * percentage plots against its own right-hand scale (different unit).
 * Sessions are spaced by recording order, so repeated measurements on the
 * same date stay distinct and an unchanged subject draws a flat segment.
 *
 * Every number printed on the chart is a display string from the service
 * (or one of the two fixed cut-off labels); nothing is recomputed here.
 */

import { svgEl } from './dom';
import type { SessionJson } from './types';

export const BMI_GUIDES = [25, 30] as const;

const WIDTH = 640;
const HEIGHT = 300;
const MARGIN = { top: 16, right: 56, bottom: 48, left: 56 };

export interface ChartPoint {
  x: number;
  y: number;
  /** Pre-rounded display string straight from the service. */
  label: string;
  date: string;
}

export interface TrendChart {
  svg: SVGSVGElement;
  bmiPoints: ChartPoint[];
  patPoints: ChartPoint[];
}

interface AxisLabels {
  bmi_axis: string;
  pat_axis: string;
}

function makeScale(min: number, max: number, outMin: number, outMax: number) {
  const span = max - min;
  if (span <= 0) {
    const mid = (outMin + outMax) / 2;
    return (_: number) => mid;
  }
  return (value: number) => outMin + ((value - min) / span) * (outMax - outMin);
}

export function buildTrendChart(sessions: SessionJson[], labels: AxisLabels): TrendChart {
  const svg = svgEl('svg', {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    class: 'trend-chart',
    role: 'img',
  });

  const plotLeft = MARGIN.left;
  const plotRight = WIDTH - MARGIN.right;
  const plotTop = MARGIN.top;
  const plotBottom = HEIGHT - MARGIN.bottom;

  svg.append(
    svgEl('rect', {
      x: String(plotLeft),
      y: String(plotTop),
      width: String(plotRight - plotLeft),
      height: String(plotBottom - plotTop),
      class: 'chart-bg',
    }),
  );

  const n = sessions.length;
  const xAt = (index: number) =>
    n <= 1 ? (plotLeft + plotRight) / 2 : plotLeft + (index / (n - 1)) * (plotRight - plotLeft);

  // BMI scale always spans the guide lines so they stay visible
  const bmiValues = sessions.map((s) => s.bmi);
  const bmiMin = Math.min(...bmiValues, BMI_GUIDES[0]) - 2;
  const bmiMax = Math.max(...bmiValues, BMI_GUIDES[1]) + 2;
  const bmiY = makeScale(bmiMin, bmiMax, plotBottom, plotTop);

  for (const guide of BMI_GUIDES) {
    const y = bmiY(guide);
    svg.append(
      svgEl('line', {
        x1: String(plotLeft),
        x2: String(plotRight),
        y1: String(y),
        y2: String(y),
        class: 'guide-line',
        'data-guide': String(guide),
      }),
    );
    svg.append(
      svgEl(
        'text',
        { x: String(plotLeft - 8), y: String(y + 4), class: 'guide-label', 'text-anchor': 'end' },
        [String(guide)],
      ),
    );
  }

  const bmiPoints: ChartPoint[] = sessions.map((s, i) => ({
    x: xAt(i),
    y: bmiY(s.bmi),
    label: s.bmi_display,
    date: s.date,
  }));

  const patSessions = sessions
    .map((s, i) => ({ session: s, index: i }))
    .filter((e) => e.session.pat_supported && e.session.pat_percent !== null);
  const patValues = patSessions.map((e) => e.session.pat_percent!);
  const patMin = patValues.length ? Math.min(...patValues, 0) : 0;
  const patMax = patValues.length ? Math.max(...patValues, 30) + 5 : 35;
  const patY = makeScale(patMin, patMax, plotBottom, plotTop);

  const patPoints: ChartPoint[] = patSessions.map((e) => ({
    x: xAt(e.index),
    y: patY(e.session.pat_percent!),
    label: e.session.pat_display!,
    date: e.session.date,
  }));

  // a polyline needs at least two points; a lone session stays a dot
  const drawSeries = (points: ChartPoint[], series: 'bmi' | 'pat') => {
    if (points.length >= 2) {
      svg.append(
        svgEl('polyline', {
          points: points.map((p) => `${p.x},${p.y}`).join(' '),
          class: `series-line series-${series}`,
          fill: 'none',
        }),
      );
    }
    for (const point of points) {
      svg.append(
        svgEl('circle', {
          cx: String(point.x),
          cy: String(point.y),
          r: '4',
          class: `series-point point-${series}`,
        }),
      );
      svg.append(
        svgEl(
          'text',
          {
            x: String(point.x),
            y: String(point.y - 8),
            class: `point-label label-${series}`,
            'text-anchor': 'middle',
          },
          [series === 'pat' ? `${point.label}%` : point.label],
        ),
      );
    }
  };

  drawSeries(bmiPoints, 'bmi');
  drawSeries(patPoints, 'pat');

  // x labels: session dates from the payload, in recording order
  sessions.forEach((s, i) => {
    svg.append(
      svgEl(
        'text',
        {
          x: String(xAt(i)),
          y: String(plotBottom + 16),
          class: 'x-label',
          'text-anchor': 'middle',
        },
        [s.date],
      ),
    );
  });

  svg.append(
    svgEl(
      'text',
      { x: String(plotLeft), y: String(HEIGHT - 6), class: 'axis-title axis-bmi' },
      [labels.bmi_axis],
    ),
  );
  svg.append(
    svgEl(
      'text',
      {
        x: String(plotRight),
        y: String(HEIGHT - 6),
        class: 'axis-title axis-pat',
        'text-anchor': 'end',
      },
      [labels.pat_axis],
    ),
  );

  return { svg, bmiPoints, patPoints };
}
